"""Exact arithmetic tools for inhomogeneous Diophantine approximation along integer sequences."""

from ._rdlab import (
    __version__,
    W_direct,
    W_exact,
    brute_min_form_value,
    cantor_mu_hat_exact,
    certify_sequence,
    counting_R,
    fourier_coeff,
    gcd_error_term,
    gen_seq,
    lebesgue_measure_E,
    lebesgue_measure_E_intersection,
    log_bound_check,
    min_form_value,
    mu_hat,
    psi_sum,
    ratio_series_check,
    reconstruct,
    run_cli,
    schmidt_experiment,
    tau_exponent,
    tau_partial_sum_trend,
    verify_bounds,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]

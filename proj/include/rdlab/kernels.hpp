#pragma once

// Trapezoid approximations chi+- of the indicator of ||x|| <= delta, the
// kernels W+-(x) = sum_p chi+-(x - (p + gamma)/q) and their Fourier
// coefficients.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "rdlab/core.hpp"

namespace rdlab {

enum class KernelSign { kPlus, kMinus };

KernelSign parse_sign(const std::string& text);  // "+", "-", "plus", "minus"
const char* sign_name(KernelSign sign);

struct KernelParams {
  std::int64_t q = 4;
  Rational gamma;
  Rational epsilon{1};
  Rational psi_q{1, 10};

  // q >= 4, 0 < epsilon <= 1, 0 < psi_q < 1, 0 < psi_q / q < 1/4, gamma in [0, 1].
  void validate() const;
  Rational delta() const { return psi_q / Rational(q); }
  nlohmann::json to_json() const;
};

// chi+-_{delta, eps}(x), period 1. Throws unless 0 < eps <= 1, 0 < delta < 1/4.
double chi(KernelSign sign, double x, double delta, double epsilon);
Rational chi_exact(KernelSign sign, const Rational& x, const Rational& delta, const Rational& epsilon);
// The indicator chi_delta itself.
Rational chi_indicator(const Rational& x, const Rational& delta);

double W_direct(KernelSign sign, double x, const KernelParams& params);
Rational W_exact(KernelSign sign, const Rational& x, const KernelParams& params);

// Closed-form coefficient; zero when q does not divide k != 0.
std::complex<double> fourier_coeff(KernelSign sign, const KernelParams& params, std::int64_t k);

struct Reconstruction {
  double value = 0.0;
  double tail_bound = 0.0;  // 2 / (pi^2 S psi eps), S = floor(K / q)
};

// sum_{|k| <= K} W^(k) e^{2 pi i k x}; K >= q.
Reconstruction reconstruct(KernelSign sign, const KernelParams& params, std::int64_t K, const Rational& x);
// The same at many points, coefficients computed once; e^{2 pi i s q x} is
// built by repeated multiplication from its exact s = 1 value.
std::vector<Reconstruction> reconstruct(KernelSign sign, const KernelParams& params, std::int64_t K,
                                        std::span<const Rational> xs);

// Exact integral over [0, 1]: the midpoint rule on the cells between
// consecutive breakpoints is exact for a piecewise-linear integrand.
Rational integrate_W(KernelSign sign, const KernelParams& params);
// Composite midpoint rule with `panels` equal panels, in double.
double integrate_W_midpoint(KernelSign sign, const KernelParams& params, std::uint64_t panels);

struct BoundCheck {
  std::string name;
  std::string sign;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool pass = false;    // strict inequalities need margin > 0, others margin >= 0
};

struct BoundsReport {
  std::vector<BoundCheck> checks;
  std::int64_t truncation = 0;  // s, t range 1..truncation, tails bounded analytically
  bool pass() const;
  double min_margin() const;
  nlohmann::json to_json() const;
};

// The coefficient bounds |W^(sq)| <= (2 + eps) psi and <= 1/(pi^2 s^2 psi eps),
// sum_s |W^(sq)| < 3 / sqrt(eps) and the double sum <= 9 / sqrt(eps eps~),
// for both signs, with s up to `truncation` and analytic tails folded in.
BoundsReport verify_bounds(const KernelParams& params, const KernelParams& params2, std::int64_t truncation = 10000);

}  // namespace rdlab

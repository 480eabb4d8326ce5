#pragma once

// Minimal RAII holder for mpfr_t. Internal to the library.

#include <mpfr.h>

#include "rdlab/core.hpp"

namespace rdlab::detail {

class Real {
 public:
  explicit Real(mpfr_prec_t precision) { mpfr_init2(v_, precision); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  void set(const Rational& x) { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
  void set(const BigInt& x) { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // floor(v * 2^bits) / 2^bits as an exact rational.
  Rational floor_dyadic(unsigned bits) const {
    Real scaled(mpfr_get_prec(v_));
    mpfr_mul_2ui(scaled.get(), v_, bits, MPFR_RNDN);
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), scaled.get(), MPFR_RNDD);
    Rational r(z);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
    return r;
  }

 private:
  mpfr_t v_;
};

}  // namespace rdlab::detail

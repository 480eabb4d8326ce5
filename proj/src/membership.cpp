#include "rdlab/membership.hpp"

#include <stdexcept>

namespace rdlab {

ArcTest::ArcTest(const BigInt& q, const Shift& gamma, const Rational& psi_q, unsigned precision_bits)
    : precision_bits_(precision_bits) {
  if (q < 1) throw std::invalid_argument("membership: q must be >= 1");
  if (psi_q < 0) throw std::invalid_argument("membership: psi(q) must be nonnegative");
  const BigInt& g = gamma.gamma().get_num();
  const BigInt& h = gamma.gamma().get_den();
  qh_ = q * h;
  mpz_mul_2exp(g_shifted_.get_mpz_t(), g.get_mpz_t(), precision_bits);
  mpz_mul_2exp(modulus_.get_mpz_t(), h.get_mpz_t(), precision_bits);
  psi_num_ = psi_q.get_num();
  psi_den_ = psi_q.get_den();
  rhs_ = psi_num_ * modulus_;
}

bool ArcTest::contains(const DyadicPoint& x) const {
  if (x.precision_bits() != precision_bits_) {
    throw std::invalid_argument("membership: dyadic precision mismatch");
  }
  BigInt r = qh_ * x.numerator() - g_shifted_;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus_.get_mpz_t());
  BigInt other = modulus_ - r;
  const BigInt& d = r <= other ? r : other;
  return d * psi_den_ <= rhs_;
}

bool membership(const DyadicPoint& x, const BigInt& q, const Shift& gamma, const Rational& psi_q) {
  return ArcTest(q, gamma, psi_q, x.precision_bits()).contains(x);
}

bool membership(const DyadicPoint& x, const BigInt& q, const Shift& gamma, const ApproxFunction& psi,
                std::size_t n) {
  return membership(x, q, gamma, psi(q, n));
}

}  // namespace rdlab

#pragma once

#include <cstddef>

#include "rdlab/approx.hpp"
#include "rdlab/core.hpp"

namespace rdlab {

// x in E(q, gamma, psi), i.e. ||q x - gamma|| <= psi(q), decided exactly.
bool membership(const DyadicPoint& x, const BigInt& q, const Shift& gamma, const ApproxFunction& psi,
                std::size_t n);

// Same test with psi(q) already evaluated.
bool membership(const DyadicPoint& x, const BigInt& q, const Shift& gamma, const Rational& psi_q);

// Precomputed form of the membership test for one (q, gamma, psi(q)) and a
// fixed dyadic precision. With x = a / 2^P, gamma = g / h and psi(q) = u / v
// the test reads: r = (q h a - g 2^P) mod (2^P h), min(r, D - r) v <= u D
// where D = 2^P h.
class ArcTest {
 public:
  ArcTest(const BigInt& q, const Shift& gamma, const Rational& psi_q, unsigned precision_bits);
  bool contains(const DyadicPoint& x) const;
  unsigned precision_bits() const { return precision_bits_; }

 private:
  BigInt qh_;
  BigInt g_shifted_;
  BigInt modulus_;
  BigInt psi_num_;
  BigInt psi_den_;
  BigInt rhs_;  // u * D
  unsigned precision_bits_;
};

}  // namespace rdlab

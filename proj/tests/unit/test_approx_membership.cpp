#include "doctest.h"
#include "helpers.hpp"

#include <cmath>

#include "rdlab/approx.hpp"
#include "rdlab/membership.hpp"
#include "rdlab/rng.hpp"

using namespace rdlab;

TEST_CASE("power family is exact for integer exponents and clamped at 1/2") {
  const auto psi = ApproxFunction::power(Rational(3), Rational(2));
  CHECK(psi(BigInt(10), 1) == Rational(3, 100));
  CHECK(psi(BigInt(2), 1) == Rational(1, 2));
  CHECK(psi.nonincreasing() == true);
}

TEST_CASE("transcendental values are dyadic floors close to the real value") {
  const auto psi = ApproxFunction::power(Rational(1), Rational(1, 2));
  const Rational v = psi(BigInt(7), 1);
  CHECK(to_double(v) == doctest::Approx(1 / std::sqrt(7.0)).epsilon(1e-15));
  CHECK(v <= Rational(1, 2));
  const auto lp = ApproxFunction::logpow(Rational(1, 4), Rational(2));
  CHECK(to_double(lp(BigInt(100), 1)) == doctest::Approx(0.25 / std::pow(std::log(102.0), 2)).epsilon(1e-14));
  // Deterministic across calls.
  CHECK(lp(BigInt(100), 1) == lp(BigInt(100), 1));
}

TEST_CASE("approximation functions round trip through text and JSON") {
  for (const char* text : {"constant:1/5", "power:2:3/2", "logpow:1:2", "indexed:1/2,1/3"}) {
    const auto psi = ApproxFunction::parse(text);
    const auto again = ApproxFunction::from_json(psi.to_json());
    CHECK(again.to_json() == psi.to_json());
    CHECK(again(BigInt(9), 2) == psi(BigInt(9), 2));
  }
  const auto idx = ApproxFunction::indexed({Rational(1, 2), Rational(1, 3)});
  CHECK(idx(BigInt(100), 2) == Rational(1, 3));
  CHECK(idx.nonincreasing() == std::nullopt);
  CHECK_THROWS(ApproxFunction::parse("mystery:1"));
}

TEST_CASE("membership agrees with the rational definition") {
  Stream s(21, 0, stream_domain::kFuzz);
  int inside = 0;
  for (int i = 0; i < 3000; ++i) {
    const BigInt q(static_cast<unsigned long>(1 + s.below(5000)));
    const Shift gamma(testing::rational_below(s, 40, 40) / 41);
    const Rational psi_q = testing::rational_below(s, 50, 100);
    const unsigned P = 4 + static_cast<unsigned>(s.below(100));
    const DyadicPoint x(s.bits(P), P);
    const bool expected = nearest_int_distance(Rational(q) * x.value() - gamma.gamma()) <= psi_q;
    CHECK(membership(x, q, gamma, psi_q) == expected);
    CHECK(ArcTest(q, gamma, psi_q, P).contains(x) == expected);
    inside += expected;
  }
  CHECK(inside > 100);
}

TEST_CASE("membership on arc endpoints is closed") {
  // q = 4, gamma = 0, psi = 1/4: x = 1/16 gives ||4x|| = 1/4.
  const DyadicPoint x(BigInt(1), 4);
  CHECK(membership(x, BigInt(4), Shift(), Rational(1, 4)));
  CHECK_FALSE(membership(x, BigInt(4), Shift(), Rational(1, 5)));
}

#include "doctest.h"
#include "helpers.hpp"

#include <cmath>

#include "rdlab/core.hpp"
#include "rdlab/rng.hpp"

using namespace rdlab;

TEST_CASE("rationals parse to canonical form") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-0.375") == Rational(-3, 8));
  CHECK(parse_rational("17") == Rational(17));
  CHECK(to_string(make_rational(4, 2)) == "2/1");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(parse_bigint("123456789012345678901234567890").get_str() == "123456789012345678901234567890");
}

TEST_CASE("floor and ceil of rationals") {
  CHECK(rdlab::floor(Rational(-7, 2)) == -4);
  CHECK(rdlab::ceil(Rational(-7, 2)) == -3);
  CHECK(rdlab::floor(Rational(6, 3)) == 2);
  CHECK(rdlab::ceil(Rational(6, 3)) == 2);
}

TEST_CASE("nearest integer distance lies in [0, 1/2]") {
  CHECK(nearest_int_distance(Rational(7, 10)) == Rational(3, 10));
  CHECK(nearest_int_distance(Rational(-1, 3)) == Rational(1, 3));
  CHECK(nearest_int_distance(Rational(5, 2)) == Rational(1, 2));
  Stream s(11, 0, stream_domain::kFuzz);
  for (int i = 0; i < 500; ++i) {
    const Rational x = testing::rational_below(s, 5000, 97) - 20;
    const Rational d = nearest_int_distance(x);
    CHECK(d >= 0);
    CHECK(d <= Rational(1, 2));
    // Oracle: distance to floor(x) or floor(x) + 1.
    const Rational f(rdlab::floor(x));
    const Rational a = x - f;
    CHECK(d == (a < 1 - a ? a : Rational(1 - a)));
  }
}

TEST_CASE("floor_pow agrees with a linear search") {
  Stream s(12, 0, stream_domain::kFuzz);
  for (int i = 0; i < 300; ++i) {
    const BigInt base(static_cast<unsigned long>(1 + s.below(300)));
    const Rational e = make_rational(BigInt(static_cast<unsigned long>(s.below(40))), BigInt(static_cast<unsigned long>(1 + s.below(6))));
    const BigInt y = floor_pow(base, e);
    // y is the largest integer with y^den <= base^num.
    BigInt lhs, rhs, next;
    mpz_pow_ui(rhs.get_mpz_t(), base.get_mpz_t(), e.get_num().get_ui());
    mpz_pow_ui(lhs.get_mpz_t(), y.get_mpz_t(), e.get_den().get_ui());
    const BigInt y1 = y + 1;
    mpz_pow_ui(next.get_mpz_t(), y1.get_mpz_t(), e.get_den().get_ui());
    CHECK(lhs <= rhs);
    CHECK(next > rhs);
  }
  // Exact at perfect powers, where a double floor can land one short.
  CHECK(floor_pow(BigInt(4), Rational(19)) == BigInt(1) << 38);
  CHECK(floor_pow(BigInt(1000), Rational(1, 3)) == 10);
  CHECK(floor_pow(BigInt(999), Rational(1, 3)) == 9);
}

TEST_CASE("less_than_power compares exactly") {
  CHECK(less_than_power(BigInt(3), BigInt(16), Rational(1, 2)));   // 3 < 4
  CHECK_FALSE(less_than_power(BigInt(4), BigInt(16), Rational(1, 2)));
  CHECK(less_than_power(BigInt(1), BigInt(2), Rational(1, 3)));
  Stream s(13, 0, stream_domain::kFuzz);
  for (int i = 0; i < 300; ++i) {
    const BigInt v(static_cast<unsigned long>(1 + s.below(1000)));
    const BigInt b(static_cast<unsigned long>(2 + s.below(1000)));
    const Rational a = make_rational(BigInt(static_cast<unsigned long>(1 + s.below(9))), BigInt(10));
    const double lv = std::log(v.get_d());
    const double rv = to_double(a) * std::log(b.get_d());
    if (std::fabs(lv - rv) > 1e-9) CHECK(less_than_power(v, b, a) == (lv < rv));
  }
}

TEST_CASE("log_big handles values beyond double range") {
  const BigInt big = BigInt(1) << 5000;
  CHECK(log_big(big) == doctest::Approx(5000 * std::log(2.0)).epsilon(1e-14));
  CHECK(log_big(BigInt(1)) == 0.0);
}

TEST_CASE("dyadic points") {
  const DyadicPoint x = DyadicPoint::floor_of(Rational(1, 3), 8);
  CHECK(x.numerator() == 85);
  CHECK(DyadicPoint::ceil_of(Rational(1, 3), 8).numerator() == 86);
  CHECK(x.hex() == "55");
  CHECK(DyadicPoint::from_hex("55", 8) == x);
  CHECK(x.value() == Rational(85, 256));
  const DyadicPoint y(BigInt(1) << 129, 130);
  CHECK(y.fraction_bits128() == (static_cast<u128>(1) << 127));
  CHECK_THROWS(DyadicPoint(BigInt(256), 8));
}

TEST_CASE("u128 round trip") {
  const BigInt v("340282366920938463463374607431768211455");
  CHECK(from_u128(to_u128(v)) == v);
  CHECK(from_u128(to_u128(BigInt(12345))) == 12345);
}

TEST_CASE("shift must lie in [0, 1]") {
  CHECK_NOTHROW(Shift(Rational(1)));
  CHECK_THROWS_AS(Shift(Rational(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(Shift(Rational(-1, 2)), std::invalid_argument);
}

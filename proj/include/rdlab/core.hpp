#pragma once

// Exact scalar types shared by every module: big integers, rationals,
// dyadic sample points and the inhomogeneous shift.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace rdlab {

using BigInt = mpz_class;
using Rational = mpq_class;
using u128 = unsigned __int128;

// Parses a decimal integer ("-42", "1000000000000000000000").
BigInt parse_bigint(std::string_view text);
std::string to_string(const BigInt& value);

// Parses "p/q", "p" or a finite decimal such as "0.37". The result is
// canonical (lowest terms, positive denominator).
Rational parse_rational(std::string_view text);
// Always "p/q", including integers ("3/1").
std::string to_string(const Rational& value);

Rational make_rational(const BigInt& numerator, const BigInt& denominator);

BigInt floor(const Rational& x);
BigInt ceil(const Rational& x);

// Distance to the nearest integer, exact. Result lies in [0, 1/2].
Rational nearest_int_distance(const Rational& x);

// floor(base^exponent) for base >= 1 and exponent >= 0, computed exactly as
// the largest y with y^den <= base^num.
BigInt floor_pow(const BigInt& base, const Rational& exponent);

// Natural logarithm of a positive big integer in double precision (relative
// error a few ulp, no overflow for huge values).
double log_big(const BigInt& value);
double to_double(const Rational& x);

// Exact test of value < base^alpha for value, base >= 1 and alpha = p/r > 0:
// value^r < base^p.
bool less_than_power(const BigInt& value, const BigInt& base, const Rational& alpha);

// x = numerator / 2^precision_bits, a point of [0, 1).
class DyadicPoint {
 public:
  static constexpr unsigned kDefaultPrecision = 128;

  DyadicPoint() = default;
  explicit DyadicPoint(BigInt numerator, unsigned precision_bits = kDefaultPrecision);

  // Largest dyadic point <= x (x in [0,1)).
  static DyadicPoint floor_of(const Rational& x, unsigned precision_bits = kDefaultPrecision);
  // Smallest dyadic point >= x; requires the result to stay below 1.
  static DyadicPoint ceil_of(const Rational& x, unsigned precision_bits = kDefaultPrecision);
  static DyadicPoint from_hex(std::string_view hex, unsigned precision_bits = kDefaultPrecision);

  const BigInt& numerator() const { return numerator_; }
  unsigned precision_bits() const { return precision_bits_; }

  Rational value() const;
  double to_double() const;
  // Lower-case hex numerator without prefix, zero padded to ceil(P/4) digits.
  std::string hex() const;
  // The top 128 bits of the binary fraction, i.e. floor(x * 2^128).
  u128 fraction_bits128() const;

  friend bool operator==(const DyadicPoint& a, const DyadicPoint& b) {
    return a.precision_bits_ == b.precision_bits_ && a.numerator_ == b.numerator_;
  }

 private:
  BigInt numerator_{0};
  unsigned precision_bits_ = kDefaultPrecision;
};

// The inhomogeneous parameter gamma in [0, 1].
class Shift {
 public:
  Shift() = default;
  explicit Shift(Rational gamma);
  const Rational& gamma() const { return gamma_; }

 private:
  Rational gamma_{0};
};

// Versions of the linked GMP and MPFR libraries.
std::string gmp_version_string();
std::string mpfr_version_string();

u128 to_u128(const BigInt& value);  // value mod 2^128
BigInt from_u128(u128 value);

}  // namespace rdlab

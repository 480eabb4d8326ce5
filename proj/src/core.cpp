#include "rdlab/core.hpp"

#include <cmath>
#include <stdexcept>

#include <mpfr.h>

namespace rdlab {

namespace {

bool is_decimal_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

std::string strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return std::string(s);
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  std::string s = strip(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (!is_decimal_integer(s)) throw std::invalid_argument("not an integer: '" + s + "'");
  return BigInt(s, 10);
}

std::string to_string(const BigInt& value) { return value.get_str(10); }

Rational parse_rational(std::string_view text) {
  std::string s = strip(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_decimal_integer(num) || !is_decimal_integer(den) || den[0] == '-') {
      throw std::invalid_argument("not a rational: '" + s + "'");
    }
    BigInt d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    return make_rational(BigInt(num, 10), d);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (negative) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (!is_decimal_integer(whole) || (!frac.empty() && !is_decimal_integer(frac)) ||
        (!frac.empty() && (frac[0] == '-' || frac[0] == '+'))) {
      throw std::invalid_argument("not a decimal: '" + s + "'");
    }
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    BigInt num = BigInt(whole, 10) * scale + (frac.empty() ? BigInt(0) : BigInt(frac, 10));
    if (negative) num = -num;
    return make_rational(num, scale);
  }
  if (!is_decimal_integer(s)) throw std::invalid_argument("not a rational: '" + s + "'");
  return Rational(BigInt(s, 10));
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

Rational make_rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

BigInt floor(const Rational& x) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

BigInt ceil(const Rational& x) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Rational nearest_int_distance(const Rational& x) {
  Rational frac = x - Rational(floor(x));
  Rational other = Rational(1) - frac;
  return frac <= other ? frac : other;
}

BigInt floor_pow(const BigInt& base, const Rational& exponent) {
  if (base < 1) throw std::invalid_argument("floor_pow: base must be >= 1");
  if (exponent < 0) throw std::invalid_argument("floor_pow: exponent must be >= 0");
  const BigInt& num = exponent.get_num();
  const BigInt& den = exponent.get_den();
  if (!num.fits_ulong_p() || !den.fits_ulong_p()) {
    throw std::invalid_argument("floor_pow: exponent terms too large");
  }
  BigInt raised;
  mpz_pow_ui(raised.get_mpz_t(), base.get_mpz_t(), num.get_ui());
  BigInt root;
  mpz_root(root.get_mpz_t(), raised.get_mpz_t(), den.get_ui());
  return root;
}

double log_big(const BigInt& value) {
  if (value <= 0) throw std::invalid_argument("log_big: value must be positive");
  long exponent = 0;
  double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

double to_double(const Rational& x) {
  // mpq_get_d truncates; split exponent handling keeps huge/tiny ratios finite.
  long en = 0;
  long ed = 0;
  if (x == 0) return 0.0;
  double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

bool less_than_power(const BigInt& value, const BigInt& base, const Rational& alpha) {
  if (alpha <= 0) throw std::invalid_argument("less_than_power: alpha must be positive");
  const BigInt& p = alpha.get_num();
  const BigInt& r = alpha.get_den();
  if (!p.fits_ulong_p() || !r.fits_ulong_p()) {
    throw std::invalid_argument("less_than_power: alpha terms too large");
  }
  BigInt lhs;
  BigInt rhs;
  mpz_pow_ui(lhs.get_mpz_t(), value.get_mpz_t(), r.get_ui());
  mpz_pow_ui(rhs.get_mpz_t(), base.get_mpz_t(), p.get_ui());
  return lhs < rhs;
}

DyadicPoint::DyadicPoint(BigInt numerator, unsigned precision_bits)
    : numerator_(std::move(numerator)), precision_bits_(precision_bits) {
  if (precision_bits_ == 0) throw std::invalid_argument("DyadicPoint: precision must be positive");
  if (numerator_ < 0 || mpz_sizeinbase(numerator_.get_mpz_t(), 2) > precision_bits_) {
    throw std::invalid_argument("DyadicPoint: numerator outside [0, 2^P)");
  }
}

DyadicPoint DyadicPoint::floor_of(const Rational& x, unsigned precision_bits) {
  if (x < 0 || x >= 1) throw std::invalid_argument("DyadicPoint::floor_of: x outside [0,1)");
  Rational scaled = x;
  mpq_mul_2exp(scaled.get_mpq_t(), x.get_mpq_t(), precision_bits);
  return DyadicPoint(floor(scaled), precision_bits);
}

DyadicPoint DyadicPoint::ceil_of(const Rational& x, unsigned precision_bits) {
  if (x < 0 || x >= 1) throw std::invalid_argument("DyadicPoint::ceil_of: x outside [0,1)");
  Rational scaled = x;
  mpq_mul_2exp(scaled.get_mpq_t(), x.get_mpq_t(), precision_bits);
  return DyadicPoint(ceil(scaled), precision_bits);
}

DyadicPoint DyadicPoint::from_hex(std::string_view hex, unsigned precision_bits) {
  std::string s = strip(hex);
  if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) s.erase(0, 2);
  if (s.empty()) throw std::invalid_argument("DyadicPoint::from_hex: empty");
  BigInt n;
  if (n.set_str(s, 16) != 0) throw std::invalid_argument("DyadicPoint::from_hex: bad hex '" + s + "'");
  return DyadicPoint(n, precision_bits);
}

Rational DyadicPoint::value() const {
  Rational r(numerator_);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), precision_bits_);
  return r;
}

double DyadicPoint::to_double() const {
  if (numerator_ == 0) return 0.0;
  long e = 0;
  double m = mpz_get_d_2exp(&e, numerator_.get_mpz_t());
  return std::ldexp(m, static_cast<int>(e - static_cast<long>(precision_bits_)));
}

std::string DyadicPoint::hex() const {
  std::string digits = numerator_.get_str(16);
  std::size_t width = (precision_bits_ + 3) / 4;
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return digits;
}

u128 DyadicPoint::fraction_bits128() const {
  BigInt top;
  if (precision_bits_ <= 128) {
    mpz_mul_2exp(top.get_mpz_t(), numerator_.get_mpz_t(), 128 - precision_bits_);
  } else {
    mpz_fdiv_q_2exp(top.get_mpz_t(), numerator_.get_mpz_t(), precision_bits_ - 128);
  }
  return to_u128(top);
}

Shift::Shift(Rational gamma) : gamma_(std::move(gamma)) {
  if (gamma_ < 0 || gamma_ > 1) throw std::invalid_argument("shift gamma must lie in [0,1]");
}

u128 to_u128(const BigInt& value) {
  BigInt reduced;
  mpz_fdiv_r_2exp(reduced.get_mpz_t(), value.get_mpz_t(), 128);
  BigInt hi;
  mpz_fdiv_q_2exp(hi.get_mpz_t(), reduced.get_mpz_t(), 64);
  BigInt lo;
  mpz_fdiv_r_2exp(lo.get_mpz_t(), reduced.get_mpz_t(), 64);
  auto word = [](const BigInt& w) {
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, w.get_mpz_t());
    return out;
  };
  return (static_cast<u128>(word(hi)) << 64) | word(lo);
}

BigInt from_u128(u128 value) {
  std::uint64_t words[2] = {static_cast<std::uint64_t>(value), static_cast<std::uint64_t>(value >> 64)};
  BigInt out;
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  return out;
}

std::string gmp_version_string() { return gmp_version; }

std::string mpfr_version_string() { return mpfr_get_version(); }

}  // namespace rdlab

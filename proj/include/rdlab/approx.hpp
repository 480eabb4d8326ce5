#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "rdlab/core.hpp"

namespace rdlab {

// psi(q) = min(1/2, c * q^-lambda)
struct PowerFamily {
  Rational c;
  Rational lambda;
};

// psi(q) = min(1/2, c * log(q + 2)^-beta)
struct LogPowFamily {
  Rational c;
  Rational beta;
};

struct ConstantFamily {
  Rational c;
};

// psi(q_n) = table[n - 1]
struct IndexedFamily {
  std::vector<Rational> table;
};

struct CustomFamily {
  std::string name;
  std::function<Rational(const BigInt& q, std::size_t n)> fn;
};

using ApproxFamily = std::variant<PowerFamily, LogPowFamily, ConstantFamily, IndexedFamily, CustomFamily>;

// An approximation function psi with values clamped into [0, 1].
//
// Families whose value is irrational (non-integer lambda, logpow) are
// evaluated with MPFR at kTranscendentalBits + 64 bits and rounded down to a
// dyadic rational with kTranscendentalBits bits, so every evaluation returns
// the same exact rational on every platform.
class ApproxFunction {
 public:
  static constexpr unsigned kTranscendentalBits = 192;

  static ApproxFunction power(Rational c, Rational lambda);
  static ApproxFunction logpow(Rational c, Rational beta);
  static ApproxFunction constant(Rational c);
  static ApproxFunction indexed(std::vector<Rational> table);
  static ApproxFunction custom(std::string name, std::function<Rational(const BigInt&, std::size_t)> fn);

  // n is the 1-based position of q in its sequence; only the indexed family
  // reads it.
  Rational operator()(const BigInt& q, std::size_t n) const;

  const ApproxFamily& family() const { return family_; }

  // Monotonicity is recorded, never required. nullopt means unknown.
  std::optional<bool> nonincreasing() const;

  nlohmann::json to_json() const;
  static ApproxFunction from_json(const nlohmann::json& j);
  // Accepts JSON text or the shorthand "constant:1/5", "power:c:lambda",
  // "logpow:c:beta", "indexed:1/2,1/3".
  static ApproxFunction parse(const std::string& text);

 private:
  explicit ApproxFunction(ApproxFamily family) : family_(std::move(family)) {}
  ApproxFamily family_;
};

Rational eval_psi(const ApproxFunction& psi, const BigInt& q, std::size_t n);

Rational clamp_unit(const Rational& x);

}  // namespace rdlab

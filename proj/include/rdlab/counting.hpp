#pragma once

// The counting function R(x, N), the sums Psi(N) and E(N), exact Lebesgue
// measures of E-sets and the Monte Carlo experiment around R ~ 2 Psi.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "rdlab/approx.hpp"
#include "rdlab/core.hpp"
#include "rdlab/measures.hpp"
#include "rdlab/membership.hpp"
#include "rdlab/sequences.hpp"

namespace rdlab {

struct CountingInstance {
  std::vector<BigInt> terms;  // q_1 < ... < q_N (at least N terms)
  ApproxFunction psi = ApproxFunction::constant(Rational(0));
  Shift gamma;
  std::size_t N = 1;

  void validate() const;
  // psi(q_n) for n = 1..N.
  std::vector<Rational> psi_values() const;
};

// #{1 <= n <= N : x in E(q_n, gamma, psi)}, exact.
std::size_t counting_R(const DyadicPoint& x, const CountingInstance& inst);

// Precomputed arc tests for repeated evaluation at one dyadic precision.
class Counter {
 public:
  Counter(const CountingInstance& inst, unsigned precision_bits);
  std::size_t count(const DyadicPoint& x) const;

 private:
  std::vector<ArcTest> arcs_;
};

Rational psi_sum(const CountingInstance& inst);

struct GcdErrorFloat {
  double value = 0.0;
  double error_bound = 0.0;  // absolute bound on the rounding error of value
};

// E(N) = sum_{1 <= m < n <= N} gcd(q_m, q_n) min(psi(q_m)/q_m, psi(q_n)/q_n).
GcdErrorFloat gcd_error_term(const CountingInstance& inst, unsigned threads = 1);
inline constexpr std::size_t kExactGcdLimit = 2000;
Rational gcd_error_term_exact(const CountingInstance& inst);
// E(N') for every N' in checkpoints (ascending, each <= inst.N), one pass.
std::vector<GcdErrorFloat> gcd_error_profile(const CountingInstance& inst, std::span<const std::size_t> checkpoints,
                                             unsigned threads = 1);

// Measure of E(q, gamma, psi) = { x in [0,1] : ||q x - gamma|| <= psi_q }.
inline constexpr unsigned long kArcListLimit = 1'000'000;
Rational lebesgue_measure_E(const BigInt& q, const Shift& gamma, const Rational& psi_q);

// Merged, sorted closed intervals making up E(q, gamma, psi) within [0, 1].
std::vector<std::pair<Rational, Rational>> arc_union(const BigInt& q, const Shift& gamma, const Rational& psi_q);

struct IntersectionReport {
  Rational measure;
  Rational main_term;   // 4 psi(q) psi(q')
  Rational residual;    // |measure - main_term|
  Rational normalizer;  // gcd(q, q') min(psi(q)/q, psi(q')/q')
  std::optional<Rational> normalized;  // residual / normalizer when normalizer > 0

  nlohmann::json to_json() const;
};

IntersectionReport lebesgue_measure_E_intersection(const BigInt& q, const BigInt& q_prime, const Shift& gamma,
                                                   const Rational& psi_q, const Rational& psi_q_prime);

struct SchmidtOptions {
  Rational epsilon{1, 10};
  double K = 1.0;  // band multiplier for the fraction-within summary
  unsigned threads = 1;
};

struct SchmidtSample {
  std::size_t index = 0;
  DyadicPoint x;
  std::size_t R = 0;
  double ratio = 0.0;      // R / (2 Psi)
  double deviation = 0.0;  // (R - 2 Psi) / (sqrt(Psi + E) log(Psi + E + 2)^(2 + eps))
};

struct SchmidtSummary {
  std::vector<std::pair<double, double>> ratio_quantiles;      // (p, value)
  std::vector<std::pair<double, double>> deviation_quantiles;  // (p, value)
  double band = 0.0;  // K Psi^-1/2 log(Psi + 2)^(2 + eps)
  double fraction_within = 0.0;
  double mean_R = 0.0;
  double standard_error = 0.0;
  std::optional<double> reference;  // expected R, known for the Lebesgue sampler
  std::optional<double> z_score;    // (mean_R - reference) / standard_error
};

struct SchmidtReport {
  nlohmann::json parameters;
  double psi_sum = 0.0;
  double error_term = 0.0;
  bool reference_is_two_psi = true;
  std::vector<SchmidtSample> samples;
  SchmidtSummary summary;
  std::vector<std::string> warnings;

  nlohmann::json summary_json() const;
};

SchmidtReport schmidt_experiment(const CountingInstance& inst, const MeasureSpec& sampler, std::size_t M,
                                 std::uint64_t seed, const SchmidtOptions& options = {});

// Parametric families for the convergence dichotomy of sum psi(q_n).
struct PsiFamily {
  enum class Kind { kPower, kLogPow, kConstant } kind = Kind::kPower;
  Rational c{1};
  Rational exponent{1};  // lambda for power, beta for logpow

  // Power, logpow and constant ApproxFunctions map to a family; others throw.
  static PsiFamily from_approx(const ApproxFunction& psi);
};

struct SeqFamily {
  enum class Kind { kGeometric, kPolynomial, kSmooth, kBlock, kLiouville } kind = Kind::kGeometric;
  Rational growth{2};      // a for geometric, g for polynomial (q_n ~ n^g)
  unsigned prime_count = 1;  // smooth: number of primes
  PCParams block;          // kBlock
};

struct KhintchineVerdict {
  bool converges = false;
  std::string reason;
  nlohmann::json to_json() const;
};

// Throws std::invalid_argument when the combination has no closed-form
// classification.
KhintchineVerdict khintchine_verdict(const PsiFamily& psi, const SeqFamily& seq);

}  // namespace rdlab

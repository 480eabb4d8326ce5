#pragma once

// Probability measures on [0, 1): samplers, Fourier transforms (empirical and
// closed form), decay-model audits and the tau exponent.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "rdlab/core.hpp"
#include "rdlab/rng.hpp"

namespace rdlab {

enum class MeasureKind { kLebesgue, kPolyDensity, kCantor, kCantorSmoothed, kPointMassMixture };

struct PointMass {
  Rational location;  // in [0, 1)
  Rational weight;    // > 0; weights are normalized by their sum
};

struct MeasureSpec {
  MeasureKind kind = MeasureKind::kLebesgue;
  unsigned degree = 0;           // poly_density: density (d + 1) x^d
  unsigned base = 3;             // cantor kinds
  std::vector<unsigned> digits;  // cantor kinds: allowed digit set, sorted
  Rational sigma;                // cantor_smoothed: x = (c + sigma U) mod 1
  std::vector<PointMass> masses;
  unsigned precision_bits = DyadicPoint::kDefaultPrecision;

  static MeasureSpec lebesgue();
  static MeasureSpec poly_density(unsigned degree);
  static MeasureSpec cantor(unsigned base, std::vector<unsigned> digits);
  static MeasureSpec cantor_smoothed(unsigned base, std::vector<unsigned> digits, Rational sigma);
  static MeasureSpec point_masses(std::vector<PointMass> masses);

  void validate() const;
  // Number of base-b digits a cantor draw carries: floor(P / log2 b).
  unsigned cantor_depth() const;
  std::string name() const;

  nlohmann::json to_json() const;
  static MeasureSpec from_json(const nlohmann::json& j);
  // JSON text or "lebesgue", "poly:D", "cantor:B:d1,d2", "cantor_smoothed:B:d1,d2:SIGMA",
  // "points:X@W,X@W".
  static MeasureSpec parse(const std::string& text);

  DyadicPoint draw(Stream& stream) const;
};

// Draw i uses Stream(seed, i, kSampler); output is independent of threads.
std::vector<DyadicPoint> sample(const MeasureSpec& spec, std::size_t count, std::uint64_t seed, unsigned threads = 1);

struct MuHatEstimate {
  std::complex<double> value;
  double standard_error = 0.0;  // 1 / sqrt(M); 0 for exact values
};

// Samples reduced to their top 128 fraction bits, so t x mod 1 is computed
// exactly in 128-bit arithmetic for every integer t.
class EmpiricalMeasure {
 public:
  explicit EmpiricalMeasure(std::span<const DyadicPoint> samples);
  std::size_t size() const { return bits_.size(); }
  MuHatEstimate mu_hat(const BigInt& t, unsigned threads = 1) const;

 private:
  std::vector<u128> bits_;
};

MuHatEstimate empirical_mu_hat(std::span<const DyadicPoint> samples, const BigInt& t);

struct CantorTransform {
  std::complex<double> value;
  double truncation_bound = 0.0;  // 2 pi |t| b^-depth
};

// prod_{j=1..depth} (1/|D|) sum_{d in D} exp(-2 pi i t d b^-j), phases reduced
// exactly before conversion to double.
CantorTransform cantor_mu_hat_exact(unsigned base, std::span<const unsigned> digits, const BigInt& t,
                                    unsigned depth);

// A Fourier transform t -> mu_hat(t) usable by the audits.
struct MuHatSource {
  std::string name;
  std::function<std::complex<double>(const BigInt& t)> eval;
};

// Closed-form transform of the law the sampler draws from (before the final
// rounding to P bits); cantor kinds use the product over cantor_depth() digits.
MuHatSource exact_mu_hat(const MeasureSpec& spec);
// Empirical transform of M draws.
MuHatSource empirical_source(const MeasureSpec& spec, std::size_t count, std::uint64_t seed, unsigned threads = 1);

enum class DecayForm { kPower, kLogPow, kExpSqrtLog };

struct DecayModel {
  DecayForm form = DecayForm::kPower;
  Rational c{1};
  Rational exponent{1};  // a for power, A for logpow, c2 for expsqrtlog

  static DecayModel power(Rational c, Rational a);
  static DecayModel logpow(Rational c, Rational A);
  static DecayModel expsqrtlog(Rational c2);

  void validate() const;
  // log h(t) for t >= 2.
  double log_h(const BigInt& t) const;
  std::string name() const;
  nlohmann::json to_json() const;
  // "power:c:a", "logpow:c:A", "expsqrtlog:c2" or JSON.
  static DecayModel parse(const std::string& text);
};

struct DecayProbe {
  Rational ratio{2};         // geometric grid t = floor(ratio^j)
  BigInt t_max{1'000'000};   // geometric grid stops here
  unsigned multiples = 3;    // k q_n for k = 1..multiples
  std::vector<BigInt> extra;  // appended verbatim
};

struct DecayAuditReport {
  // c_n = h(q_n) n^rho over the index range.
  std::vector<std::pair<std::size_t, double>> c_n;
  double c_max = 0.0;
  double c_slope = 0.0;  // least-squares slope of log c_n against log n
  bool c_bounded = true;
  // |mu_hat(t)| / h(t) over the probe grid.
  std::vector<std::pair<BigInt, double>> ratios;
  double ratio_max = 0.0;
  double ratio_slope = 0.0;  // least-squares slope of log ratio against log t
  bool ratio_bounded = true;
  double slope_tolerance = 0.05;
  std::vector<std::string> warnings;

  bool pass() const { return c_bounded && ratio_bounded; }
  nlohmann::json to_json() const;
};

// Both halves of the balance condition as finite-range boundedness reports.
// A half is "bounded" when its log-log trend slope is at most slope_tolerance.
DecayAuditReport decay_audit(const MuHatSource& source, const DecayModel& model, std::span<const BigInt> terms,
                             const Rational& rho, std::size_t n_lo, std::size_t n_hi, const DecayProbe& probe = {},
                             double slope_tolerance = 0.05);

struct CriteriaAudit {
  std::vector<double> max_sum;       // partial sums of max_{1<=|k|<=K} |mu_hat(k q_n)|
  std::vector<double> weighted_sum;  // partial sums of sum_{1<=|k|<=K} |mu_hat(k q_n)| / |k|
  nlohmann::json to_json() const;
};

CriteriaAudit convergence_criteria_audit(const MuHatSource& source, std::span<const BigInt> terms, std::size_t K,
                                         std::size_t N);

struct TauExponent {
  Rational tau;      // (g + 1) / (g (1 + lambda))
  Rational clipped;  // min(tau, 1)
};

// Closed form for q_n ~ n^g and psi(q) = q^-lambda.
TauExponent tau_exponent(const Rational& g, const Rational& lambda);

struct PartialSumTrend {
  double eta = 0.0;
  std::vector<double> decade_increments;  // sums over (10^{k-1}, 10^k]
  std::vector<double> increment_ratios;
  bool converging = false;  // every increment ratio < 1
};

// Partial sums of sum_n q_n (psi(q_n) / q_n)^eta with q_n = n^g, psi = q^-lambda.
PartialSumTrend tau_partial_sum_trend(const Rational& g, const Rational& lambda, double eta, unsigned decades = 6);

}  // namespace rdlab

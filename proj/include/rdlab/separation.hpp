#pragma once

// Exact alpha-separation checks: does 1 <= |s q_m - t q_n| < q_m^alpha have a
// solution with 1 <= s <= m^5, t >= 1?

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"

#include "rdlab/core.hpp"

namespace rdlab {

struct FormMinimum {
  BigInt s;
  BigInt t;
  BigInt value;  // |s q_m - t q_n| > 0

  bool operator==(const FormMinimum&) const = default;
};

// Minimum nonzero |s q_m - t q_n| over 1 <= s <= S, t >= 1, taking the
// smallest s and then the smallest t among minimizers. nullopt when no
// nonzero value exists. Candidates come from the continued fraction of
// q_m / q_n.
std::optional<FormMinimum> min_form_value(const BigInt& q_m, const BigInt& q_n, const BigInt& S);

// Same contract by exhaustive scan; S <= kBruteForceLimit.
inline constexpr unsigned long kBruteForceLimit = 1'000'000;
std::optional<FormMinimum> brute_min_form_value(const BigInt& q_m, const BigInt& q_n, const BigInt& S);

struct SeparationQuery {
  BigInt q_m;
  BigInt q_n;
  std::size_t m = 1;
  Rational alpha;

  void validate() const;  // 1 <= q_m < q_n, m >= 1, 0 < alpha < 1
};

struct ViolationCertificate {
  BigInt s;
  BigInt t;
  BigInt value;

  nlohmann::json to_json() const;
};

// A certificate iff the minimal nonzero value over s <= m^5 is < q_m^alpha,
// decided as value^r < q_m^p for alpha = p/r.
std::optional<ViolationCertificate> check_pair(const SeparationQuery& query);

struct PairViolation {
  std::size_t m = 0;
  std::size_t n = 0;
  BigInt q_m;
  BigInt q_n;
  ViolationCertificate certificate;
  bool below_threshold = false;  // m < the caller's claimed threshold

  nlohmann::json to_json() const;
};

struct CertifyOptions {
  unsigned threads = 1;
  bool exhaustive = false;            // collect every violating pair
  std::optional<std::size_t> threshold;  // m below this is marked below_threshold
};

struct SeparationReport {
  std::size_t m0 = 1;
  std::size_t upto = 0;
  bool separated = true;
  std::optional<PairViolation> first_violation;  // lexicographic (m, n)
  std::vector<PairViolation> violations;         // exhaustive mode only, sorted
  // Smallest m' >= m0 such that no pair with m >= m' violates (exhaustive mode).
  std::optional<std::size_t> clean_from_m;

  nlohmann::json to_json() const;
};

// Scans m0 <= m < n <= N over terms[0..N). Results do not depend on
// options.threads.
SeparationReport certify_sequence(std::span<const BigInt> terms, const Rational& alpha, std::size_t m0,
                                  std::size_t N, const CertifyOptions& options = {});

}  // namespace rdlab

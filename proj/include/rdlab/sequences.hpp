#pragma once

// Constructors for denominator sequences and their growth auditors.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rdlab/core.hpp"
#include "rdlab/sequence.hpp"

namespace rdlab {

// Parameters of the block construction: blocks Q_k = { s * n_k : 1 <= s <=
// floor(n_k^(rho1 - 1)) } with floor(n_k^rho2) / c <= n_{k+1} <= floor(n_k^rho2).
struct PCParams {
  Rational rho1;
  Rational rho2;
  Rational c;
  BigInt n1;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument unless 1 < rho1, 6 rho1 < rho2, c > 1,
  // n1 >= 2 and n1^rho1 < n1^rho2 / c.
  void validate() const;
  nlohmann::json to_json() const;
};

enum class BlockLeader {
  kSeededRandom,   // n_{k+1} uniform in its bracket, stream keyed by (seed, k)
  kSmallestPrime,  // n_{k+1} the smallest prime in its bracket
};

enum class BlockMultipliers {
  kAll,     // s = 1, 2, ..., floor(n_k^(rho1 - 1))
  kPrimes,  // s prime, s <= floor(n_k^(rho1 - 1))
};

DenominatorSequence gen_geometric(const BigInt& a, std::size_t count);
DenominatorSequence gen_smooth(std::vector<BigInt> primes, std::size_t count);
DenominatorSequence gen_pc(const PCParams& params, std::size_t count);
DenominatorSequence gen_pc_prime(const PCParams& params, std::size_t count);
// General block construction; gen_pc and gen_pc_prime are the two named
// combinations.
DenominatorSequence make_block_sequence(const PCParams& params, BlockLeader leader, BlockMultipliers multipliers,
                                        std::size_t count);

// q_n = start + n - 1.
DenominatorSequence gen_range(const BigInt& start, std::size_t count);
// q_n = n^g.
DenominatorSequence gen_power(unsigned g, std::size_t count);
// q_n = max(q_{n-1} + 1, ceil(exp((ratio * log n)^2))), the smallest sequence
// meeting log q_n >= ((rho / c2) log n)^2 with ratio = rho / c2.
DenominatorSequence gen_liouville_growth(const Rational& ratio, std::size_t count);

struct GrowthAuditReport {
  std::size_t audit_start = 0;                     // first audited index m
  std::vector<std::pair<std::size_t, double>> slopes;  // (m, log q_m / log m)
  double max_slope = 0.0;
  double bound = 0.0;  // rho2 / (rho1 - 1) + 1 + epsilon
  bool pass = true;

  nlohmann::json to_json() const;
};

// Audits log q_m / log m <= rho2 / (rho1 - 1) + 1 (+ epsilon) for
// n1^(rho1 - 1) < m <= count. An empty audited range passes vacuously.
GrowthAuditReport growth_slope_audit(std::span<const BigInt> terms, const PCParams& params, std::size_t count,
                                     const Rational& epsilon = Rational(0));

struct LiouvilleGrowthResult {
  bool holds = true;
  std::optional<std::size_t> first_failure;
};

// Checks log q_n >= ((rho / c2) log n)^2 for n0 <= n <= count, deciding
// each index as q_n >= exp(rhs) with MPFR at a precision that covers the
// full integer part of exp(rhs).
LiouvilleGrowthResult liouville_growth_check(std::span<const BigInt> terms, const Rational& rho, const Rational& c2,
                                             std::size_t n0, std::size_t count);

}  // namespace rdlab

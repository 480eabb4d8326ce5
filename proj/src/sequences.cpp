#include "rdlab/sequences.hpp"

#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "detail/mpfr.hpp"
#include "rdlab/primes.hpp"
#include "rdlab/rng.hpp"

namespace rdlab {

namespace {

// c < n^e with c = u/v, e = a/b > 0: u^b < n^a v^b.
bool ratio_below_power(const Rational& c, const BigInt& n, const Rational& e) {
  const unsigned long a = e.get_num().get_ui();
  const unsigned long b = e.get_den().get_ui();
  BigInt lhs;
  BigInt rhs;
  BigInt vb;
  mpz_pow_ui(lhs.get_mpz_t(), c.get_num_mpz_t(), b);
  mpz_pow_ui(rhs.get_mpz_t(), n.get_mpz_t(), a);
  mpz_pow_ui(vb.get_mpz_t(), c.get_den_mpz_t(), b);
  return lhs < rhs * vb;
}

class GeometricSource final : public TermSource {
 public:
  explicit GeometricSource(BigInt a) : a_(std::move(a)), current_(1) {}
  std::optional<BigInt> next() override {
    current_ *= a_;
    return current_;
  }

 private:
  BigInt a_;
  BigInt current_;
};

// Ascending products of the given primes: pop the minimum, push its multiples.
class SmoothSource final : public TermSource {
 public:
  explicit SmoothSource(std::vector<BigInt> primes) : primes_(std::move(primes)) {
    for (const auto& p : primes_) pending_.insert(p);
  }
  std::optional<BigInt> next() override {
    BigInt value = *pending_.begin();
    pending_.erase(pending_.begin());
    for (const auto& p : primes_) pending_.insert(value * p);
    return value;
  }

 private:
  std::vector<BigInt> primes_;
  std::set<BigInt> pending_;
};

class RangeSource final : public TermSource {
 public:
  explicit RangeSource(BigInt start) : next_(std::move(start)) {}
  std::optional<BigInt> next() override { return next_++; }

 private:
  BigInt next_;
};

class PowerSource final : public TermSource {
 public:
  explicit PowerSource(unsigned g) : g_(g) {}
  std::optional<BigInt> next() override {
    ++n_;
    BigInt v;
    mpz_ui_pow_ui(v.get_mpz_t(), n_, g_);
    return v;
  }

 private:
  unsigned g_;
  unsigned long n_ = 0;
};

class LiouvilleSource final : public TermSource {
 public:
  explicit LiouvilleSource(Rational ratio) : ratio_(std::move(ratio)) {}
  std::optional<BigInt> next() override {
    ++n_;
    const double guess = std::pow(to_double(ratio_) * std::log(static_cast<double>(n_)), 2.0) / std::log(2.0);
    detail::Real x(static_cast<mpfr_prec_t>(guess) + 128);
    detail::Real r(mpfr_get_prec(x.get()));
    r.set(ratio_);
    mpfr_set_ui(x.get(), n_, MPFR_RNDN);
    mpfr_log(x.get(), x.get(), MPFR_RNDU);
    mpfr_mul(x.get(), x.get(), r.get(), MPFR_RNDU);
    mpfr_sqr(x.get(), x.get(), MPFR_RNDU);
    mpfr_exp(x.get(), x.get(), MPFR_RNDU);
    BigInt v;
    mpfr_get_z(v.get_mpz_t(), x.get(), MPFR_RNDU);
    if (v <= previous_) v = previous_ + 1;
    previous_ = v;
    return v;
  }

 private:
  Rational ratio_;
  unsigned long n_ = 0;
  BigInt previous_ = 0;
};

// Streams the union of the blocks Q_k in order. Blocks are disjoint and
// increasing (max Q_k <= n_k^rho1 < n_{k+1}), so the union is their
// concatenation; only the current leader and multiplier are held.
class BlockSource final : public TermSource {
 public:
  BlockSource(PCParams params, BlockLeader leader, BlockMultipliers multipliers)
      : params_(std::move(params)), leader_(leader), multipliers_(multipliers) {
    start_block(params_.n1);
  }

  std::optional<BigInt> next() override {
    for (;;) {
      advance_multiplier();
      if (s_ <= s_max_) return s_ * n_k_;
      const BigInt upper = floor_pow(n_k_, params_.rho2);
      const BigInt lower = ceil(Rational(upper) / params_.c);
      start_block(choose_leader(lower, upper));
    }
  }

  std::vector<std::string> notes() const override { return notes_; }

 private:
  void start_block(const BigInt& leader) {
    ++k_;
    n_k_ = leader;
    s_max_ = floor_pow(n_k_, params_.rho1 - 1);
    s_ = 0;
  }

  void advance_multiplier() {
    if (multipliers_ == BlockMultipliers::kAll) {
      ++s_;
      return;
    }
    bool proven = true;
    s_ = next_prime(s_ + 1, &proven);
    if (!proven) flag_probabilistic("multiplier");
  }

  BigInt choose_leader(const BigInt& lower, const BigInt& upper) {
    if (lower > upper) throw std::logic_error("block construction: empty leader bracket");
    if (leader_ == BlockLeader::kSeededRandom) {
      Stream stream(params_.seed, k_, stream_domain::kSequenceChoice);
      return lower + stream.below(BigInt(upper - lower + 1));
    }
    bool proven = true;
    BigInt p = next_prime(lower, &proven);
    if (!proven) flag_probabilistic("leader n_" + std::to_string(k_ + 1));
    if (p > upper) throw std::logic_error("block construction: no prime in leader bracket");
    return p;
  }

  void flag_probabilistic(const std::string& what) {
    const std::string note = "probabilistic primality test used for " + what;
    for (const auto& n : notes_) {
      if (n == note) return;
    }
    notes_.push_back(note);
  }

  PCParams params_;
  BlockLeader leader_;
  BlockMultipliers multipliers_;
  std::uint64_t k_ = 0;
  BigInt n_k_;
  BigInt s_max_;
  BigInt s_;
  std::vector<std::string> notes_;
};

DenominatorSequence prefetch(DenominatorSequence seq, std::size_t count) {
  if (count > 0) seq.prefix(count);
  return seq;
}

}  // namespace

void PCParams::validate() const {
  if (rho1 <= 1) throw std::invalid_argument("PCParams: rho1 must exceed 1");
  if (6 * rho1 >= rho2) throw std::invalid_argument("PCParams: need 6*rho1 < rho2");
  if (c <= 1) throw std::invalid_argument("PCParams: c must exceed 1");
  if (n1 < 2) throw std::invalid_argument("PCParams: n1 must be >= 2");
  if (!ratio_below_power(c, n1, Rational(rho2 - rho1))) {
    throw std::invalid_argument("PCParams: need n1^rho1 < n1^rho2 / c");
  }
}

nlohmann::json PCParams::to_json() const {
  return {{"rho1", to_string(rho1)},
          {"rho2", to_string(rho2)},
          {"c", to_string(c)},
          {"n1", to_string(n1)},
          {"seed", seed}};
}

DenominatorSequence gen_geometric(const BigInt& a, std::size_t count) {
  if (a < 2) throw std::invalid_argument("gen_geometric: a must be >= 2");
  if (count < 1) throw std::invalid_argument("gen_geometric: N must be >= 1");
  Provenance prov{"geometric", {{"a", to_string(a)}}, {}};
  return prefetch(DenominatorSequence(std::move(prov), std::make_unique<GeometricSource>(a)), count);
}

DenominatorSequence gen_smooth(std::vector<BigInt> primes, std::size_t count) {
  if (primes.empty()) throw std::invalid_argument("gen_smooth: prime set is empty");
  if (count < 1) throw std::invalid_argument("gen_smooth: N must be >= 1");
  std::set<BigInt> distinct(primes.begin(), primes.end());
  std::vector<std::string> notes;
  for (const auto& p : distinct) {
    auto r = primality(p);
    if (!r.prime) throw std::invalid_argument("gen_smooth: " + to_string(p) + " is not prime");
    if (!r.proven) notes.push_back("probabilistic primality test used for " + to_string(p));
  }
  std::vector<BigInt> sorted(distinct.begin(), distinct.end());
  nlohmann::json plist = nlohmann::json::array();
  for (const auto& p : sorted) plist.push_back(to_string(p));
  Provenance prov{"smooth", {{"primes", plist}}, notes};
  return prefetch(DenominatorSequence(std::move(prov), std::make_unique<SmoothSource>(std::move(sorted))), count);
}

DenominatorSequence make_block_sequence(const PCParams& params, BlockLeader leader, BlockMultipliers multipliers,
                                        std::size_t count) {
  params.validate();
  if (count < 1) throw std::invalid_argument("block sequence: N must be >= 1");
  nlohmann::json p = params.to_json();
  p["leader"] = leader == BlockLeader::kSeededRandom ? "seeded_random" : "smallest_prime";
  p["multipliers"] = multipliers == BlockMultipliers::kAll ? "all" : "primes";
  Provenance prov{"block", p, {}};
  return prefetch(
      DenominatorSequence(std::move(prov), std::make_unique<BlockSource>(params, leader, multipliers)), count);
}

DenominatorSequence gen_pc(const PCParams& params, std::size_t count) {
  params.validate();
  if (count < 1) throw std::invalid_argument("gen_pc: N must be >= 1");
  Provenance prov{"pc", params.to_json(), {}};
  return prefetch(DenominatorSequence(std::move(prov), std::make_unique<BlockSource>(
                                                           params, BlockLeader::kSeededRandom, BlockMultipliers::kAll)),
                  count);
}

DenominatorSequence gen_pc_prime(const PCParams& params, std::size_t count) {
  params.validate();
  if (params.c < 2) throw std::invalid_argument("gen_pc_prime: c must be >= 2");
  if (count < 1) throw std::invalid_argument("gen_pc_prime: N must be >= 1");
  auto r = primality(params.n1);
  if (!r.prime) throw std::invalid_argument("gen_pc_prime: n1 must be prime");
  std::vector<std::string> notes;
  if (!r.proven) notes.push_back("probabilistic primality test used for n_1");
  if (params.c != 2) notes.push_back("c = " + to_string(params.c) + " accepted; the prime construction is stated for c = 2");
  nlohmann::json p = params.to_json();
  p.erase("seed");
  Provenance prov{"pc_prime", p, notes};
  return prefetch(DenominatorSequence(std::move(prov),
                                      std::make_unique<BlockSource>(params, BlockLeader::kSmallestPrime,
                                                                    BlockMultipliers::kPrimes)),
                  count);
}

DenominatorSequence gen_range(const BigInt& start, std::size_t count) {
  if (start < 1) throw std::invalid_argument("gen_range: start must be >= 1");
  Provenance prov{"range", {{"start", to_string(start)}}, {}};
  return prefetch(DenominatorSequence(std::move(prov), std::make_unique<RangeSource>(start)), count);
}

DenominatorSequence gen_power(unsigned g, std::size_t count) {
  if (g < 1) throw std::invalid_argument("gen_power: exponent must be >= 1");
  Provenance prov{"power", {{"g", g}}, {}};
  // 1^g = 1 and 2^g >= 2, so the sequence is strictly increasing from n = 1.
  return prefetch(DenominatorSequence(std::move(prov), std::make_unique<PowerSource>(g)), count);
}

DenominatorSequence gen_liouville_growth(const Rational& ratio, std::size_t count) {
  if (ratio <= 0) throw std::invalid_argument("gen_liouville_growth: ratio must be positive");
  Provenance prov{"liouville", {{"ratio", to_string(ratio)}}, {}};
  return prefetch(DenominatorSequence(std::move(prov), std::make_unique<LiouvilleSource>(ratio)), count);
}

nlohmann::json GrowthAuditReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [m, slope] : slopes) rows.push_back({{"m", m}, {"slope", slope}});
  return {{"audit_start", audit_start}, {"max_slope", max_slope}, {"bound", bound}, {"pass", pass}, {"slopes", rows}};
}

GrowthAuditReport growth_slope_audit(std::span<const BigInt> terms, const PCParams& params, std::size_t count,
                                     const Rational& epsilon) {
  params.validate();
  if (count == 0) throw std::invalid_argument("growth_slope_audit: N must be >= 1");
  if (terms.size() < count) throw std::invalid_argument("growth_slope_audit: fewer than N terms supplied");
  if (epsilon < 0) throw std::invalid_argument("growth_slope_audit: epsilon must be >= 0");
  GrowthAuditReport report;
  report.bound = to_double(params.rho2 / (params.rho1 - 1) + 1 + epsilon);
  const BigInt start = floor_pow(params.n1, params.rho1 - 1) + 1;
  report.audit_start = start.fits_ulong_p() ? start.get_ui() : static_cast<std::size_t>(-1);
  // m = 1 has log m = 0; the slope is undefined there.
  for (std::size_t m = std::max<std::size_t>(report.audit_start, 2); m <= count; ++m) {
    const double slope = log_big(terms[m - 1]) / std::log(static_cast<double>(m));
    report.slopes.emplace_back(m, slope);
    report.max_slope = std::max(report.max_slope, slope);
    if (slope > report.bound) report.pass = false;
  }
  return report;
}

LiouvilleGrowthResult liouville_growth_check(std::span<const BigInt> terms, const Rational& rho, const Rational& c2,
                                             std::size_t n0, std::size_t count) {
  if (c2 <= 0) throw std::invalid_argument("liouville_growth_check: c2 must be positive");
  if (rho <= 2) throw std::invalid_argument("liouville_growth_check: rho must exceed 2");
  if (n0 < 1 || count < n0) throw std::invalid_argument("liouville_growth_check: need 1 <= n0 <= N");
  if (terms.size() < count) throw std::invalid_argument("liouville_growth_check: fewer than N terms supplied");
  const Rational ratio = rho / c2;
  const double ratio_d = to_double(ratio);
  LiouvilleGrowthResult result;
  for (std::size_t n = n0; n <= count; ++n) {
    const double bits = std::pow(ratio_d * std::log(static_cast<double>(n)), 2.0) / std::log(2.0);
    const auto prec = static_cast<mpfr_prec_t>(bits) + 128;
    detail::Real x(prec);
    detail::Real r(prec);
    r.set(ratio);
    mpfr_set_ui(x.get(), n, MPFR_RNDN);
    mpfr_log(x.get(), x.get(), MPFR_RNDN);
    mpfr_mul(x.get(), x.get(), r.get(), MPFR_RNDN);
    mpfr_sqr(x.get(), x.get(), MPFR_RNDN);
    mpfr_exp(x.get(), x.get(), MPFR_RNDN);
    if (mpfr_cmp_z(x.get(), terms[n - 1].get_mpz_t()) > 0) {
      result.holds = false;
      result.first_failure = n;
      break;
    }
  }
  return result;
}

}  // namespace rdlab

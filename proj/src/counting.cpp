#include "rdlab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "detail/stats.hpp"
#include "rdlab/parallel.hpp"
#include "rdlab/rng.hpp"

namespace rdlab {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

BigInt big_gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

bool fits_u64(const BigInt& v) { return mpz_sizeinbase(v.get_mpz_t(), 2) <= 64; }

std::uint64_t as_u64(const BigInt& v) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

// Column sums C_n = sum_{m < n} gcd(q_m, q_n) min(w_m, w_n), n = 1..N.
std::vector<double> gcd_columns(const CountingInstance& inst, unsigned threads) {
  const auto psi = inst.psi_values();
  const std::size_t N = inst.N;
  std::vector<double> w(N);
  for (std::size_t n = 0; n < N; ++n) w[n] = to_double(psi[n] / Rational(inst.terms[n]));
  const bool small = std::all_of(inst.terms.begin(), inst.terms.begin() + static_cast<std::ptrdiff_t>(N), fits_u64);
  std::vector<std::uint64_t> q64;
  if (small) {
    q64.reserve(N);
    for (std::size_t n = 0; n < N; ++n) q64.push_back(as_u64(inst.terms[n]));
  }
  std::vector<double> columns(N, 0.0);
  parallel_for(N, threads, [&](std::size_t n) {
    detail::CompensatedSum sum;
    for (std::size_t m = 0; m < n; ++m) {
      const double weight = std::min(w[m], w[n]);
      if (weight == 0.0) continue;
      const double g = small ? static_cast<double>(std::gcd(q64[m], q64[n]))
                             : big_gcd(inst.terms[m], inst.terms[n]).get_d();
      sum.add(g * weight);
    }
    columns[n] = sum.value();
  });
  return columns;
}

GcdErrorFloat with_bound(double value, std::size_t N) {
  // Per-term relative error <= 5u (three roundings in w, the product, gcd
  // conversion); compensated sums add 2u plus a second-order term.
  const double n = static_cast<double>(N);
  return {value, (8 * kUnitRoundoff + n * n * kUnitRoundoff * kUnitRoundoff) * value};
}

}  // namespace

void CountingInstance::validate() const {
  if (N < 1) throw std::invalid_argument("counting: N must be >= 1");
  if (terms.size() < N) throw std::invalid_argument("counting: fewer than N sequence terms");
  require_strictly_increasing(std::span<const BigInt>(terms).first(N));
}

std::vector<Rational> CountingInstance::psi_values() const {
  std::vector<Rational> out;
  out.reserve(N);
  for (std::size_t n = 1; n <= N; ++n) out.push_back(psi(terms[n - 1], n));
  return out;
}

Counter::Counter(const CountingInstance& inst, unsigned precision_bits) {
  inst.validate();
  const auto psi = inst.psi_values();
  arcs_.reserve(inst.N);
  for (std::size_t n = 0; n < inst.N; ++n) arcs_.emplace_back(inst.terms[n], inst.gamma, psi[n], precision_bits);
}

std::size_t Counter::count(const DyadicPoint& x) const {
  std::size_t hits = 0;
  for (const auto& arc : arcs_) hits += arc.contains(x) ? 1 : 0;
  return hits;
}

std::size_t counting_R(const DyadicPoint& x, const CountingInstance& inst) {
  return Counter(inst, x.precision_bits()).count(x);
}

Rational psi_sum(const CountingInstance& inst) {
  inst.validate();
  Rational total = 0;
  for (const auto& v : inst.psi_values()) total += v;
  return total;
}

GcdErrorFloat gcd_error_term(const CountingInstance& inst, unsigned threads) {
  inst.validate();
  detail::CompensatedSum total;
  for (double c : gcd_columns(inst, threads)) total.add(c);
  return with_bound(total.value(), inst.N);
}

std::vector<GcdErrorFloat> gcd_error_profile(const CountingInstance& inst, std::span<const std::size_t> checkpoints,
                                             unsigned threads) {
  inst.validate();
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || checkpoints[i] > inst.N || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw std::invalid_argument("gcd profile: checkpoints must be ascending within [1, N]");
    }
  }
  const auto columns = gcd_columns(inst, threads);
  std::vector<GcdErrorFloat> out;
  detail::CompensatedSum total;
  std::size_t next = 0;
  for (std::size_t n = 0; n < inst.N && next < checkpoints.size(); ++n) {
    total.add(columns[n]);
    if (n + 1 == checkpoints[next]) {
      out.push_back(with_bound(total.value(), n + 1));
      ++next;
    }
  }
  return out;
}

Rational gcd_error_term_exact(const CountingInstance& inst) {
  inst.validate();
  if (inst.N > kExactGcdLimit) throw std::invalid_argument("gcd_error_term_exact: N exceeds the exact-mode cap");
  const auto psi = inst.psi_values();
  const std::size_t N = inst.N;
  std::vector<Rational> w(N);
  for (std::size_t n = 0; n < N; ++n) w[n] = psi[n] / Rational(inst.terms[n]);
  // Each pair contributes gcd times the weight of its smaller member under
  // the order (w, index); grouping by that member keeps one rational product
  // per index.
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (w[a] != w[b]) return w[a] < w[b];
    return a < b;
  });
  Rational total = 0;
  for (std::size_t r = 0; r < N; ++r) {
    const std::size_t j = order[r];
    if (w[j] == 0) continue;
    BigInt G = 0;
    for (std::size_t later = r + 1; later < N; ++later) G += big_gcd(inst.terms[j], inst.terms[order[later]]);
    total += w[j] * Rational(G);
  }
  return total;
}

std::vector<std::pair<Rational, Rational>> arc_union(const BigInt& q, const Shift& gamma, const Rational& psi_q) {
  if (q < 1) throw std::invalid_argument("arc_union: q must be >= 1");
  if (psi_q < 0) throw std::invalid_argument("arc_union: psi(q) must be nonnegative");
  if (psi_q >= Rational(1, 2)) return {{Rational(0), Rational(1)}};
  if (q > kArcListLimit) throw std::invalid_argument("arc_union: q exceeds the arc list limit");
  const long qq = q.get_si();
  std::vector<std::pair<Rational, Rational>> merged;
  // psi < 1/2 and gamma in [0, 1]: only p in [-1, q] can meet [0, 1].
  for (long p = -1; p <= qq; ++p) {
    Rational lo = (Rational(p) + gamma.gamma() - psi_q) / q;
    Rational hi = (Rational(p) + gamma.gamma() + psi_q) / q;
    if (hi < 0 || lo > 1) continue;
    if (lo < 0) lo = 0;
    if (hi > 1) hi = 1;
    if (!merged.empty() && lo <= merged.back().second) {
      if (hi > merged.back().second) merged.back().second = hi;
    } else {
      merged.emplace_back(std::move(lo), std::move(hi));
    }
  }
  return merged;
}

Rational lebesgue_measure_E(const BigInt& q, const Shift& gamma, const Rational& psi_q) {
  if (q < 1) throw std::invalid_argument("lebesgue_measure_E: q must be >= 1");
  if (psi_q < 0) throw std::invalid_argument("lebesgue_measure_E: psi(q) must be nonnegative");
  if (psi_q >= Rational(1, 2)) return Rational(1);
  // Beyond the arc list limit the q arcs are disjoint (psi < 1/2) and tile
  // the circle by translation, so the measure is 2 psi.
  if (q > kArcListLimit) return 2 * psi_q;
  Rational total = 0;
  for (const auto& [lo, hi] : arc_union(q, gamma, psi_q)) total += hi - lo;
  return total;
}

nlohmann::json IntersectionReport::to_json() const {
  return {{"measure", to_string(measure)},
          {"main_term", to_string(main_term)},
          {"residual", to_string(residual)},
          {"normalizer", to_string(normalizer)},
          {"normalized_residual", normalized ? nlohmann::json(to_string(*normalized)) : nlohmann::json(nullptr)},
          {"normalized_residual_float", normalized ? nlohmann::json(to_double(*normalized)) : nlohmann::json(nullptr)}};
}

IntersectionReport lebesgue_measure_E_intersection(const BigInt& q, const BigInt& q_prime, const Shift& gamma,
                                                   const Rational& psi_q, const Rational& psi_q_prime) {
  if (q < 1 || q_prime < 1) throw std::invalid_argument("intersection: q, q' must be >= 1");
  if (q == q_prime) throw std::invalid_argument("intersection: q and q' must differ");
  const auto a = arc_union(q, gamma, psi_q);
  const auto b = arc_union(q_prime, gamma, psi_q_prime);
  IntersectionReport report;
  report.measure = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const Rational& lo = std::max(a[i].first, b[j].first);
    const Rational& hi = std::min(a[i].second, b[j].second);
    if (lo < hi) report.measure += hi - lo;
    if (a[i].second < b[j].second) {
      ++i;
    } else {
      ++j;
    }
  }
  report.main_term = 4 * psi_q * psi_q_prime;
  report.residual = abs(report.measure - report.main_term);
  report.normalizer = Rational(big_gcd(q, q_prime)) * std::min(Rational(psi_q / q), Rational(psi_q_prime / q_prime));
  if (report.normalizer > 0) report.normalized = report.residual / report.normalizer;
  return report;
}

nlohmann::json SchmidtReport::summary_json() const {
  auto quantiles = [](const std::vector<std::pair<double, double>>& qs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [p, v] : qs) out.push_back({{"p", p}, {"value", v}});
    return out;
  };
  return {{"parameters", parameters},
          {"psi_sum", psi_sum},
          {"error_term", error_term},
          {"reference_is_two_psi", reference_is_two_psi},
          {"samples", samples.size()},
          {"ratio_quantiles", quantiles(summary.ratio_quantiles)},
          {"deviation_quantiles", quantiles(summary.deviation_quantiles)},
          {"band", summary.band},
          {"fraction_within", summary.fraction_within},
          {"mean_R", summary.mean_R},
          {"standard_error", summary.standard_error},
          {"reference", summary.reference ? nlohmann::json(*summary.reference) : nlohmann::json(nullptr)},
          {"z_score", summary.z_score ? nlohmann::json(*summary.z_score) : nlohmann::json(nullptr)},
          {"warnings", warnings}};
}

SchmidtReport schmidt_experiment(const CountingInstance& inst, const MeasureSpec& sampler, std::size_t M,
                                 std::uint64_t seed, const SchmidtOptions& options) {
  inst.validate();
  sampler.validate();
  if (M < 1) throw std::invalid_argument("schmidt_experiment: M must be >= 1");
  if (options.epsilon <= 0) throw std::invalid_argument("schmidt_experiment: epsilon must be positive");
  const auto psi = inst.psi_values();
  Rational psi_total = 0;
  for (const auto& v : psi) psi_total += v;
  if (psi_total == 0) throw std::invalid_argument("schmidt_experiment: Psi(N) = 0");

  SchmidtReport report;
  report.parameters = {{"N", inst.N},
                       {"psi", inst.psi.to_json()},
                       {"gamma", to_string(inst.gamma.gamma())},
                       {"sampler", sampler.to_json()},
                       {"M", M},
                       {"seed", seed},
                       {"epsilon", to_string(options.epsilon)},
                       {"K", options.K}};
  const double Psi = to_double(psi_total);
  const double E = gcd_error_term(inst, options.threads).value;
  report.psi_sum = Psi;
  report.error_term = E;

  const bool overlapping = std::any_of(psi.begin(), psi.end(), [](const Rational& v) { return v >= Rational(1, 2); });
  if (sampler.kind == MeasureKind::kLebesgue) {
    if (overlapping) {
      report.reference_is_two_psi = false;
      report.warnings.push_back("some psi(q_n) >= 1/2: expected count uses the exact measures, not 2 Psi(N)");
      Rational expected = 0;
      for (std::size_t n = 0; n < inst.N; ++n) expected += lebesgue_measure_E(inst.terms[n], inst.gamma, psi[n]);
      report.summary.reference = to_double(expected);
    } else {
      report.summary.reference = 2 * Psi;
    }
  } else {
    report.reference_is_two_psi = false;
  }

  const double eps = to_double(options.epsilon);
  const double scale = std::sqrt(Psi + E) * std::pow(std::log(Psi + E + 2), 2 + eps);
  const Counter counter(inst, sampler.precision_bits);
  report.samples.resize(M);
  parallel_for(M, options.threads, [&](std::size_t i) {
    Stream stream(seed, i, stream_domain::kSampler);
    SchmidtSample s;
    s.index = i;
    s.x = sampler.draw(stream);
    s.R = counter.count(s.x);
    s.ratio = static_cast<double>(s.R) / (2 * Psi);
    s.deviation = (static_cast<double>(s.R) - 2 * Psi) / scale;
    report.samples[i] = std::move(s);
  });

  auto& summary = report.summary;
  summary.band = options.K * std::pow(Psi, -0.5) * std::pow(std::log(Psi + 2), 2 + eps);
  std::vector<double> ratios;
  std::vector<double> deviations;
  detail::CompensatedSum sum_R;
  std::size_t within = 0;
  for (const auto& s : report.samples) {
    ratios.push_back(s.ratio);
    deviations.push_back(s.deviation);
    sum_R.add(static_cast<double>(s.R));
    if (std::fabs(s.ratio - 1.0) <= summary.band) ++within;
  }
  const double Md = static_cast<double>(M);
  summary.mean_R = sum_R.value() / Md;
  summary.fraction_within = static_cast<double>(within) / Md;
  if (M > 1) {
    detail::CompensatedSum ss;
    for (const auto& s : report.samples) {
      const double d = static_cast<double>(s.R) - summary.mean_R;
      ss.add(d * d);
    }
    summary.standard_error = std::sqrt(ss.value() / (Md - 1)) / std::sqrt(Md);
  }
  if (summary.reference && summary.standard_error > 0) {
    summary.z_score = (summary.mean_R - *summary.reference) / summary.standard_error;
  }
  std::sort(ratios.begin(), ratios.end());
  std::sort(deviations.begin(), deviations.end());
  for (double p : {0.0, 0.05, 0.25, 0.5, 0.75, 0.95, 1.0}) {
    summary.ratio_quantiles.emplace_back(p, detail::quantile_sorted(ratios, p));
    summary.deviation_quantiles.emplace_back(p, detail::quantile_sorted(deviations, p));
  }
  return report;
}

PsiFamily PsiFamily::from_approx(const ApproxFunction& psi) {
  const auto& fam = psi.family();
  if (const auto* p = std::get_if<PowerFamily>(&fam)) return {Kind::kPower, p->c, p->lambda};
  if (const auto* l = std::get_if<LogPowFamily>(&fam)) return {Kind::kLogPow, l->c, l->beta};
  if (const auto* c = std::get_if<ConstantFamily>(&fam)) return {Kind::kConstant, c->c, Rational(0)};
  throw std::invalid_argument("khintchine: psi family has no parametric form");
}

nlohmann::json KhintchineVerdict::to_json() const {
  return {{"verdict", converges ? "converges" : "diverges"}, {"reason", reason}};
}

KhintchineVerdict khintchine_verdict(const PsiFamily& psi, const SeqFamily& seq) {
  using PK = PsiFamily::Kind;
  using SK = SeqFamily::Kind;
  if (psi.c < 0) throw std::invalid_argument("khintchine: c must be nonnegative");
  if (psi.c == 0) return {true, "psi vanishes identically"};
  const bool constant = psi.kind == PK::kConstant || (psi.kind == PK::kPower && psi.exponent == 0) ||
                        (psi.kind == PK::kLogPow && psi.exponent == 0);
  if (constant) return {false, "psi is a positive constant on an infinite sequence"};
  if (psi.exponent < 0) throw std::invalid_argument("khintchine: negative exponent is not classified");
  const Rational& e = psi.exponent;
  const std::string es = to_string(e);

  switch (seq.kind) {
    case SK::kGeometric:
      if (seq.growth < 2) throw std::invalid_argument("khintchine: geometric ratio must be >= 2");
      if (psi.kind == PK::kPower) return {true, "sum c a^(-lambda n) is geometric with lambda = " + es + " > 0"};
      return {e > 1, "log q_n ~ n log a, so the sum compares with sum n^-beta, beta = " + es};
    case SK::kPolynomial: {
      if (seq.growth <= 0) throw std::invalid_argument("khintchine: polynomial growth g must be positive");
      if (psi.kind == PK::kPower) {
        const Rational lg = e * seq.growth;
        return {lg > 1, "q_n ~ n^g gives sum n^(-lambda g) with lambda g = " + to_string(lg)};
      }
      return {false, "log q_n ~ g log n, so the sum compares with sum (log n)^-beta, which diverges"};
    }
    case SK::kSmooth: {
      if (seq.prime_count < 1) throw std::invalid_argument("khintchine: smooth family needs >= 1 prime");
      const Rational k(seq.prime_count);
      if (psi.kind == PK::kPower) return {true, "log q_n ~ C n^(1/k), so q_n^-lambda decays faster than any power of n"};
      return {e > k, "log q_n ~ C n^(1/k) with k = " + to_string(k) + ", so the sum compares with sum n^(-beta/k)"};
    }
    case SK::kBlock: {
      seq.block.validate();
      const Rational B = seq.block.rho2 / (seq.block.rho1 - 1) + 1;
      if (psi.kind == PK::kLogPow) {
        return {false, "log q_m <= B log m for large m, so (log q_m)^-beta >= (B log m)^-beta and the sum diverges"};
      }
      if (e > 1) return {true, "q_m > m gives psi(q_m) < c m^-lambda with lambda = " + es + " > 1"};
      if (e * B <= 1) {
        return {false, "q_m <= m^B with B = " + to_string(B) + " gives psi(q_m) >= c m^(-lambda B), lambda B <= 1"};
      }
      throw std::invalid_argument("khintchine: 1/B < lambda <= 1 is not decided by the growth bounds m < q_m <= m^B");
    }
    case SK::kLiouville:
      if (seq.growth <= 0) throw std::invalid_argument("khintchine: Liouville growth ratio must be positive");
      if (psi.kind == PK::kPower) {
        return {true, "log q_n ~ (r log n)^2, so q_n^-lambda = n^(-lambda r^2 log n) is summable"};
      }
      return {false, "log q_n ~ (r log n)^2 gives (log q_n)^-beta ~ (r log n)^(-2 beta), which is not summable"};
  }
  throw std::invalid_argument("khintchine: unknown sequence family");
}

}  // namespace rdlab

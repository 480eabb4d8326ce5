#include "rdlab/separation.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>

#include "rdlab/parallel.hpp"
#include "rdlab/sequence.hpp"

namespace rdlab {

namespace {

void require_pair(const BigInt& q_m, const BigInt& q_n, const BigInt& S) {
  if (q_m < 1 || q_n <= q_m) throw std::invalid_argument("min_form_value: need 1 <= q_m < q_n");
  if (S < 1) throw std::invalid_argument("min_form_value: S must be >= 1");
}

// Best valid (s, t) for one s: t in {floor, floor + 1} of s q_m / q_n with
// t >= 1 and a nonzero value; ties go to the smaller t.
std::optional<FormMinimum> evaluate(const BigInt& s, const BigInt& q_m, const BigInt& q_n) {
  const BigInt x = s * q_m;
  BigInt t0;
  BigInt r;
  mpz_fdiv_qr(t0.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), q_n.get_mpz_t());
  if (r == 0) return std::nullopt;
  std::optional<FormMinimum> best;
  if (t0 >= 1) best = FormMinimum{s, t0, r};
  const BigInt up = q_n - r;
  if (!best || up < best->value) best = FormMinimum{s, t0 + 1, up};
  return best;
}

bool better(const FormMinimum& a, const FormMinimum& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.s != b.s) return a.s < b.s;
  return a.t < b.t;
}

void consider(std::optional<FormMinimum>& best, std::optional<FormMinimum> candidate) {
  if (candidate && (!best || better(*candidate, *best))) best = std::move(candidate);
}

}  // namespace

std::optional<FormMinimum> min_form_value(const BigInt& q_m, const BigInt& q_n, const BigInt& S) {
  require_pair(q_m, q_n, S);
  BigInt g;
  mpz_gcd(g.get_mpz_t(), q_m.get_mpz_t(), q_n.get_mpz_t());
  // Values are g * |s a - t b| with a / b reduced; one-sided minima of
  // s a mod b over s <= S sit on the chains Q_{k-2} + j Q_{k-1}, j <= a_k,
  // at the largest admissible j. j - 1 and the convergents themselves are
  // added so residue 0 (s = b) never hides the last admissible record.
  BigInt num = q_m / g;
  BigInt den = q_n / g;
  std::optional<FormMinimum> best;
  consider(best, evaluate(BigInt(1), q_m, q_n));
  BigInt prev2 = 0;  // Q_{k-2}
  BigInt prev1 = 1;  // Q_{k-1}
  // Partial quotients of num / den after a_0 = 0.
  BigInt p = den;
  BigInt q = num;
  while (q != 0 && prev2 <= S) {
    BigInt ak;
    BigInt rem;
    mpz_fdiv_qr(ak.get_mpz_t(), rem.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    BigInt jmax = (S - prev2) / prev1;
    BigInt j = std::min(ak, jmax);
    for (int back = 0; back < 2 && j >= 0; ++back, --j) {
      const BigInt s = prev2 + j * prev1;
      if (s >= 1 && s <= S) consider(best, evaluate(s, q_m, q_n));
    }
    const BigInt next = ak * prev1 + prev2;
    prev2 = prev1;
    prev1 = next;
    if (prev1 <= S) consider(best, evaluate(prev1, q_m, q_n));
    p = q;
    q = rem;
  }
  return best;
}

std::optional<FormMinimum> brute_min_form_value(const BigInt& q_m, const BigInt& q_n, const BigInt& S) {
  require_pair(q_m, q_n, S);
  if (S > kBruteForceLimit) throw std::invalid_argument("brute_min_form_value: S exceeds the scan guard");
  const unsigned long bound = S.get_ui();
  std::optional<FormMinimum> best;
  for (unsigned long s = 1; s <= bound; ++s) consider(best, evaluate(BigInt(s), q_m, q_n));
  return best;
}

void SeparationQuery::validate() const {
  if (q_m < 1 || q_n <= q_m) throw std::invalid_argument("separation query: need 1 <= q_m < q_n");
  if (m < 1) throw std::invalid_argument("separation query: m must be >= 1");
  if (alpha <= 0 || alpha >= 1) throw std::invalid_argument("separation query: alpha must lie in (0, 1)");
}

nlohmann::json ViolationCertificate::to_json() const {
  return {{"s", to_string(s)}, {"t", to_string(t)}, {"value", to_string(value)}};
}

std::optional<ViolationCertificate> check_pair(const SeparationQuery& query) {
  query.validate();
  BigInt S;
  mpz_ui_pow_ui(S.get_mpz_t(), query.m, 5);
  auto best = min_form_value(query.q_m, query.q_n, S);
  if (!best) return std::nullopt;
  if (!less_than_power(best->value, query.q_m, query.alpha)) return std::nullopt;
  return ViolationCertificate{best->s, best->t, best->value};
}

nlohmann::json PairViolation::to_json() const {
  return {{"m", m},
          {"n", n},
          {"q_m", q_m.get_str()},
          {"q_n", q_n.get_str()},
          {"certificate", certificate.to_json()},
          {"below_threshold", below_threshold}};
}

nlohmann::json SeparationReport::to_json() const {
  nlohmann::json j = {{"m0", m0}, {"upto", upto}, {"separated", separated}};
  j["separated_up_to"] = separated ? nlohmann::json(upto) : nlohmann::json(nullptr);
  j["first_violation"] = first_violation ? first_violation->to_json() : nlohmann::json(nullptr);
  if (!violations.empty() || clean_from_m) {
    nlohmann::json all = nlohmann::json::array();
    for (const auto& v : violations) all.push_back(v.to_json());
    j["violations"] = all;
    j["clean_from_m"] = clean_from_m ? nlohmann::json(*clean_from_m) : nlohmann::json(nullptr);
  }
  return j;
}

SeparationReport certify_sequence(std::span<const BigInt> terms, const Rational& alpha, std::size_t m0,
                                  std::size_t N, const CertifyOptions& options) {
  if (m0 < 1 || N <= m0) throw std::invalid_argument("certify_sequence: need 1 <= m0 < N");
  if (terms.size() < N) throw std::invalid_argument("certify_sequence: fewer than N terms supplied");
  if (alpha <= 0 || alpha >= 1) throw std::invalid_argument("certify_sequence: alpha must lie in (0, 1)");
  require_strictly_increasing(terms.first(N));

  // Row m holds its violations in ascending n; non-exhaustive rows stop at
  // the first one.
  const std::size_t rows = N - m0;
  std::vector<std::vector<PairViolation>> found(rows);
  // Rows after the earliest violating row cannot change a non-exhaustive
  // report and are skipped.
  std::atomic<std::size_t> earliest_row{std::numeric_limits<std::size_t>::max()};
  parallel_for(rows, options.threads, [&](std::size_t i) {
    if (!options.exhaustive && i > earliest_row.load()) return;
    const std::size_t m = m0 + i;
    for (std::size_t n = m + 1; n <= N; ++n) {
      SeparationQuery query{terms[m - 1], terms[n - 1], m, alpha};
      if (auto cert = check_pair(query)) {
        const bool below = options.threshold && m < *options.threshold;
        found[i].push_back(PairViolation{m, n, terms[m - 1], terms[n - 1], std::move(*cert), below});
        if (!options.exhaustive) {
          std::size_t seen = earliest_row.load();
          while (i < seen && !earliest_row.compare_exchange_weak(seen, i)) {
          }
          return;
        }
      }
    }
  });

  SeparationReport report;
  report.m0 = m0;
  report.upto = N;
  for (auto& row : found) {
    if (row.empty()) continue;
    if (!report.first_violation) report.first_violation = row.front();
    report.separated = false;
    if (!options.exhaustive) break;
    for (auto& v : row) report.violations.push_back(std::move(v));
  }
  if (options.exhaustive) {
    std::size_t clean = m0;
    for (const auto& v : report.violations) clean = std::max(clean, v.m + 1);
    report.clean_from_m = clean;
  }
  return report;
}

}  // namespace rdlab

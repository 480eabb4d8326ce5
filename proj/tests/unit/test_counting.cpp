#include "doctest.h"
#include "helpers.hpp"

#include <cmath>
#include <numeric>

#include "rdlab/counting.hpp"
#include "rdlab/membership.hpp"
#include "rdlab/sequences.hpp"

using namespace rdlab;

namespace {

CountingInstance instance(std::vector<BigInt> terms, ApproxFunction psi, Rational gamma) {
  CountingInstance inst;
  inst.N = terms.size();
  inst.terms = std::move(terms);
  inst.psi = std::move(psi);
  inst.gamma = Shift(gamma);
  return inst;
}

std::vector<BigInt> range_terms(unsigned long from, unsigned long count) {
  std::vector<BigInt> t;
  for (unsigned long i = 0; i < count; ++i) t.emplace_back(from + i);
  return t;
}

// Measure of a union of closed intervals on the line, by sorting endpoints.
Rational union_length(std::vector<std::pair<Rational, Rational>> iv) {
  std::sort(iv.begin(), iv.end());
  Rational total = 0;
  bool open = false;
  Rational lo, hi;
  for (const auto& [a, b] : iv) {
    if (open && a <= hi) {
      if (b > hi) hi = b;
      continue;
    }
    if (open) total += hi - lo;
    lo = a;
    hi = b;
    open = true;
  }
  if (open) total += hi - lo;
  return total;
}

// E(q, gamma, psi) inside [0, 1] as raw arcs around (p + gamma)/q.
std::vector<std::pair<Rational, Rational>> raw_arcs(unsigned long q, const Rational& gamma, const Rational& psi) {
  std::vector<std::pair<Rational, Rational>> out;
  const Rational Q(q);
  for (long p = -1; p <= static_cast<long>(q); ++p) {
    const Rational c = (Rational(p) + gamma) / Q;
    Rational a = c - psi / Q, b = c + psi / Q;
    if (a < 0) a = 0;
    if (b > 1) b = 1;
    if (a < b) out.emplace_back(a, b);
  }
  return out;
}

}  // namespace

TEST_CASE("counting R agrees with term-by-term membership") {
  auto seq = gen_geometric(BigInt(3), 30);
  const auto terms = seq.prefix(30);
  auto inst = instance({terms.begin(), terms.end()}, ApproxFunction::constant(Rational(1, 5)), Rational(37, 100));
  Stream s(41, 0, stream_domain::kFuzz);
  const Counter counter(inst, 128);
  for (int i = 0; i < 200; ++i) {
    const DyadicPoint x(s.bits(128), 128);
    std::size_t expected = 0;
    for (std::size_t n = 1; n <= inst.N; ++n) {
      expected += nearest_int_distance(Rational(inst.terms[n - 1]) * x.value() - inst.gamma.gamma()) <= Rational(1, 5);
    }
    CHECK(counting_R(x, inst) == expected);
    CHECK(counter.count(x) == expected);
  }
  CHECK(psi_sum(inst) == Rational(6));
}

TEST_CASE("gcd error term against a direct double loop") {
  auto inst = instance(range_terms(2, 60), ApproxFunction::power(Rational(1), Rational(1, 2)), Rational(0));
  const auto psi = inst.psi_values();
  Rational oracle = 0;
  for (std::size_t n = 1; n <= inst.N; ++n) {
    for (std::size_t m = 1; m < n; ++m) {
      const BigInt g = gcd(inst.terms[m - 1], inst.terms[n - 1]);
      const Rational a = psi[m - 1] / Rational(inst.terms[m - 1]);
      const Rational b = psi[n - 1] / Rational(inst.terms[n - 1]);
      oracle += Rational(g) * (a < b ? a : b);
    }
  }
  CHECK(gcd_error_term_exact(inst) == oracle);
  const auto f = gcd_error_term(inst, 1);
  CHECK(std::fabs(f.value - to_double(oracle)) <= f.error_bound + 1e-15);
  CHECK(f.value == doctest::Approx(to_double(oracle)).epsilon(1e-12));
  CHECK(gcd_error_term(inst, 8).value == f.value);

  const std::vector<std::size_t> checkpoints = {10, 30, 60};
  const auto profile = gcd_error_profile(inst, checkpoints, 4);
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    auto sub = inst;
    sub.N = checkpoints[i];
    CHECK(profile[i].value == doctest::Approx(to_double(gcd_error_term_exact(sub))).epsilon(1e-12));
  }
}

TEST_CASE("measure of a single E set") {
  CHECK(lebesgue_measure_E(BigInt(7), Shift(Rational(1, 3)), Rational(1, 10)) == Rational(1, 5));
  CHECK(lebesgue_measure_E(BigInt(7), Shift(Rational(1, 3)), Rational(1, 2)) == 1);
  Stream s(42, 0, stream_domain::kFuzz);
  for (int i = 0; i < 100; ++i) {
    const unsigned long q = 1 + s.below(300);
    const Rational gamma = testing::rational_below(s, 50, 50) / 51;
    const Rational psi = testing::rational_below(s, 49, 100) / 100 * 49 / 50;
    const auto arcs = arc_union(BigInt(q), Shift(gamma), psi);
    Rational total = 0;
    for (const auto& [a, b] : arcs) total += b - a;
    CHECK(total == union_length(raw_arcs(q, gamma, psi)));
    if (psi < Rational(1, 2)) CHECK(total == 2 * psi);
  }
}

TEST_CASE("intersection measure: hand value and pairwise-overlap oracle") {
  const auto hand = lebesgue_measure_E_intersection(BigInt(2), BigInt(3), Shift(), Rational(1, 10), Rational(1, 10));
  CHECK(hand.measure == Rational(1, 15));
  CHECK(hand.main_term == Rational(1, 25));
  CHECK(hand.residual == Rational(2, 75));
  REQUIRE(hand.normalized);
  CHECK(*hand.normalized == Rational(4, 5));

  Stream s(43, 0, stream_domain::kFuzz);
  for (int i = 0; i < 60; ++i) {
    const unsigned long q = 1 + s.below(60), r = q + 1 + s.below(60);
    const Rational gamma = testing::rational_below(s, 20, 20) / 21;
    const Rational a = testing::rational_below(s, 40, 100) / 100;
    const Rational b = testing::rational_below(s, 40, 100) / 100;
    const auto rep = lebesgue_measure_E_intersection(BigInt(q), BigInt(r), Shift(gamma), a, b);
    std::vector<std::pair<Rational, Rational>> pieces;
    for (const auto& [x0, x1] : raw_arcs(q, gamma, a)) {
      for (const auto& [y0, y1] : raw_arcs(r, gamma, b)) {
        const Rational lo = x0 > y0 ? x0 : y0, hi = x1 < y1 ? x1 : y1;
        if (lo < hi) pieces.emplace_back(lo, hi);
      }
    }
    CHECK(rep.measure == union_length(pieces));
  }
}

TEST_CASE("Schmidt experiment is reproducible and independent of workers") {
  auto seq = gen_geometric(BigInt(2), 50);
  const auto terms = seq.prefix(50);
  auto inst = instance({terms.begin(), terms.end()}, ApproxFunction::constant(Rational(1, 5)), Rational(37, 100));
  SchmidtOptions one;
  SchmidtOptions many;
  many.threads = 16;
  const auto a = schmidt_experiment(inst, MeasureSpec::lebesgue(), 64, 99, one);
  const auto b = schmidt_experiment(inst, MeasureSpec::lebesgue(), 64, 99, many);
  REQUIRE(a.samples.size() == 64);
  for (std::size_t i = 0; i < 64; ++i) {
    CHECK(a.samples[i].x == b.samples[i].x);
    CHECK(a.samples[i].R == b.samples[i].R);
    CHECK(a.samples[i].R == counting_R(a.samples[i].x, inst));
  }
  CHECK(a.summary_json() == b.summary_json());
  REQUIRE(a.summary.reference);
  CHECK(*a.summary.reference == doctest::Approx(20.0));
  CHECK(a.reference_is_two_psi);

  const auto c = schmidt_experiment(inst, MeasureSpec::lebesgue(), 64, 100, one);
  CHECK_FALSE(a.samples[0].x == c.samples[0].x);

  auto zero = inst;
  zero.psi = ApproxFunction::constant(Rational(0));
  CHECK_THROWS_AS(schmidt_experiment(zero, MeasureSpec::lebesgue(), 4, 1), std::invalid_argument);

  auto wide = inst;
  wide.psi = ApproxFunction::constant(Rational(3, 5));
  const auto w = schmidt_experiment(wide, MeasureSpec::lebesgue(), 8, 1);
  CHECK_FALSE(w.reference_is_two_psi);
  CHECK_FALSE(w.warnings.empty());
  CHECK(*w.summary.reference == doctest::Approx(50.0));
}

TEST_CASE("Khintchine verdicts") {
  SeqFamily poly{SeqFamily::Kind::kPolynomial, Rational(1)};
  CHECK(khintchine_verdict({PsiFamily::Kind::kPower, 1, Rational(2)}, poly).converges);
  CHECK_FALSE(khintchine_verdict({PsiFamily::Kind::kPower, 1, Rational(1)}, poly).converges);
  CHECK_FALSE(khintchine_verdict({PsiFamily::Kind::kLogPow, 1, Rational(5)}, poly).converges);
  SeqFamily geo{SeqFamily::Kind::kGeometric, Rational(2)};
  CHECK(khintchine_verdict({PsiFamily::Kind::kLogPow, 1, Rational(2)}, geo).converges);
  CHECK_FALSE(khintchine_verdict({PsiFamily::Kind::kLogPow, 1, Rational(1)}, geo).converges);
  SeqFamily smooth{SeqFamily::Kind::kSmooth, Rational(2), 2};
  CHECK(khintchine_verdict({PsiFamily::Kind::kLogPow, 1, Rational(3)}, smooth).converges);
  CHECK_FALSE(khintchine_verdict({PsiFamily::Kind::kLogPow, 1, Rational(2)}, smooth).converges);
  CHECK_FALSE(khintchine_verdict({PsiFamily::Kind::kConstant, Rational(1, 5), 0}, geo).converges);

  SeqFamily block{SeqFamily::Kind::kBlock};
  block.block.rho1 = 3;
  block.block.rho2 = 19;
  block.block.c = 2;
  block.block.n1 = 4;
  CHECK(khintchine_verdict({PsiFamily::Kind::kPower, 1, Rational(3, 2)}, block).converges);
  CHECK_FALSE(khintchine_verdict({PsiFamily::Kind::kPower, 1, Rational(1, 20)}, block).converges);
  CHECK_THROWS_AS(khintchine_verdict({PsiFamily::Kind::kPower, 1, Rational(1, 2)}, block), std::invalid_argument);

  // Numerical corroboration for q_n = n: partial sums of n^-lambda over
  // successive decades shrink for lambda = 2 and grow for lambda = 1/2.
  auto decade = [](double lambda, int k) {
    double s = 0;
    for (int n = static_cast<int>(std::pow(10, k - 1)) + 1; n <= static_cast<int>(std::pow(10, k)); ++n) {
      s += std::pow(n, -lambda);
    }
    return s;
  };
  CHECK(decade(2, 5) < decade(2, 4));
  CHECK(decade(0.5, 5) > decade(0.5, 4));
}

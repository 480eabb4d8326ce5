#include "doctest.h"
#include "helpers.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "rdlab/measures.hpp"
#include "rdlab/sequences.hpp"

using namespace rdlab;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Average of e^{-2 pi i t x} over every point sum d_j b^-j, d_j in digits, j <= depth.
std::complex<double> cantor_brute(unsigned base, const std::vector<unsigned>& digits, long t, unsigned depth) {
  std::vector<Rational> points = {Rational(0)};
  Rational scale(1);
  for (unsigned j = 1; j <= depth; ++j) {
    scale /= base;
    std::vector<Rational> next;
    for (const auto& p : points) {
      for (unsigned d : digits) next.push_back(p + d * scale);
    }
    points.swap(next);
  }
  std::complex<double> sum = 0;
  for (const auto& x : points) {
    const Rational tx = Rational(t) * x;
    sum += std::polar(1.0, -kTwoPi * to_double(tx - Rational(rdlab::floor(tx))));
  }
  return sum / static_cast<double>(points.size());
}

// int_0^1 (d + 1) x^d e^{-2 pi i t x} dx by Simpson's rule.
std::complex<double> poly_simpson(unsigned d, double t, int n) {
  auto f = [&](double x) { return (d + 1.0) * std::pow(x, d) * std::polar(1.0, -kTwoPi * t * x); };
  std::complex<double> s = f(0) + f(1);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(static_cast<double>(i) / n);
  return s / (3.0 * n);
}

}  // namespace

TEST_CASE("measure specs parse and round trip") {
  for (const char* text : {"lebesgue", "poly:3", "cantor:3:0,2", "cantor_smoothed:3:0,2:1/1000", "points:1/3@1,1/2@3"}) {
    const auto spec = MeasureSpec::parse(text);
    CHECK(MeasureSpec::from_json(spec.to_json()).to_json() == spec.to_json());
  }
  CHECK_THROWS(MeasureSpec::parse("cantor:3:0,3"));
  CHECK_THROWS(MeasureSpec::parse("points:3/2@1"));
  CHECK(MeasureSpec::cantor(3, {0, 2}).cantor_depth() == 80);  // 3^80 < 2^128 < 3^81
}

TEST_CASE("draws are reproducible and lie in the support") {
  const auto cantor = MeasureSpec::cantor(3, {0, 2});
  const auto a = sample(cantor, 300, 5, 1);
  CHECK(a == sample(cantor, 300, 5, 7));
  for (const auto& x : a) {
    // The first ten ternary digits avoid 1 (draws are rounded up from an exact Cantor point).
    Rational v = x.value();
    for (int j = 0; j < 10; ++j) {
      v *= 3;
      const BigInt digit = rdlab::floor(v);
      v -= Rational(digit);
      CHECK(digit != 1);
    }
  }
  const auto points = sample(MeasureSpec::point_masses({{Rational(1, 4), 1}, {Rational(1, 2), 3}}), 4000, 6, 2);
  int quarter = 0;
  for (const auto& x : points) {
    CHECK((x.value() == Rational(1, 4) || x.value() == Rational(1, 2)));
    quarter += x.value() == Rational(1, 4);
  }
  CHECK(std::abs(quarter - 1000) < 150);
}

TEST_CASE("exact transforms against independent evaluations") {
  const auto point = exact_mu_hat(MeasureSpec::point_masses({{Rational(1, 3), 1}}));
  CHECK(std::abs(point.eval(BigInt(2)) - std::polar(1.0, -kTwoPi * 2 / 3)) < 1e-14);
  CHECK(std::abs(exact_mu_hat(MeasureSpec::lebesgue()).eval(BigInt(5))) == 0.0);

  const auto poly = exact_mu_hat(MeasureSpec::poly_density(3));
  for (long t : {1, 2, 7}) CHECK(std::abs(poly.eval(BigInt(t)) - poly_simpson(3, t, 20000)) < 1e-9);

  for (long t : {1, 5, 27, 100}) {
    const auto exact = cantor_mu_hat_exact(3, std::vector<unsigned>{0, 2}, BigInt(t), 8);
    CHECK(std::abs(exact.value - cantor_brute(3, {0, 2}, t, 8)) < 1e-12);
  }
  // Known self-similarity: mu_hat(3 t) = mu_hat(t) for the middle-thirds measure.
  const std::vector<unsigned> d = {0, 2};
  CHECK(std::abs(cantor_mu_hat_exact(3, d, BigInt(3), 80).value - cantor_mu_hat_exact(3, d, BigInt(9), 80).value) < 1e-12);
}

TEST_CASE("empirical transforms") {
  const auto spec = MeasureSpec::cantor_smoothed(3, {0, 2}, Rational(1, 50));
  const auto samples = sample(spec, 20000, 8, 4);
  const EmpiricalMeasure m(samples);
  const auto exact = exact_mu_hat(spec);
  for (long t : {1, 3, 10, 40}) {
    const auto est = m.mu_hat(BigInt(t), 1);
    CHECK(est.standard_error == doctest::Approx(1 / std::sqrt(20000.0)));
    CHECK(std::abs(est.value - exact.eval(BigInt(t))) < 5 * est.standard_error);
    CHECK(est.value == m.mu_hat(BigInt(t), 8).value);
  }
  CHECK(m.mu_hat(BigInt(0)).value == std::complex<double>(1.0, 0.0));
  // Oracle for the phase arithmetic: direct double evaluation at small t.
  std::complex<double> direct = 0;
  for (const auto& x : samples) direct += std::polar(1.0, -kTwoPi * std::fmod(7 * x.to_double(), 1.0));
  CHECK(std::abs(direct / 20000.0 - m.mu_hat(BigInt(7)).value) < 1e-9);
}

TEST_CASE("decay models") {
  const auto p = DecayModel::parse("power:2:1/2");
  CHECK(p.log_h(BigInt(100)) == doctest::Approx(std::log(2.0) - 0.5 * std::log(100.0)));
  const auto e = DecayModel::parse("expsqrtlog:3");
  CHECK(e.log_h(BigInt(100)) == doctest::Approx(-3 * std::sqrt(std::log(101.0))));
  CHECK(DecayModel::parse(p.to_json().dump()).name() == p.name());
  CHECK_THROWS(DecayModel::parse("power:0:1"));
}

TEST_CASE("decay audit: max c_n is non-decreasing in rho") {
  auto seq = gen_geometric(BigInt(2), 60);
  const auto terms = seq.prefix(60);
  const auto source = exact_mu_hat(MeasureSpec::poly_density(2));
  const auto model = DecayModel::power(Rational(1), Rational(1));
  double previous = 0;
  for (const Rational rho : {Rational(1, 2), Rational(1), Rational(2), Rational(3)}) {
    const auto rep = decay_audit(source, model, terms, rho, 1, 60);
    CHECK(rep.c_max >= previous);
    previous = rep.c_max;
    // Oracle for one c_n: h(q_n) n^rho with h(t) = 1 / t.
    const auto& [n, c] = rep.c_n[10];
    CHECK(c == doctest::Approx(std::pow(2.0, -static_cast<double>(n)) * std::pow(n, to_double(rho))));
  }
  // The poly density transform decays like 1/t, so the ratio half stays bounded.
  const auto rep = decay_audit(source, model, terms, Rational(3), 1, 60);
  CHECK(rep.ratio_bounded);
  CHECK(rep.warnings.size() == 0);
  CHECK_FALSE(decay_audit(source, model, terms, Rational(2), 1, 60).warnings.empty());
}

TEST_CASE("criteria audit partial sums are non-decreasing") {
  auto seq = gen_geometric(BigInt(3), 20);
  const auto audit = convergence_criteria_audit(exact_mu_hat(MeasureSpec::poly_density(1)), seq.prefix(20), 3, 20);
  REQUIRE(audit.max_sum.size() == 20);
  for (std::size_t i = 1; i < 20; ++i) {
    CHECK(audit.max_sum[i] >= audit.max_sum[i - 1]);
    CHECK(audit.weighted_sum[i] >= audit.weighted_sum[i - 1]);
  }
  // |mu_hat(t)| = 2 / (2 pi t) for density 2x at integer t != 0; max over |k| <= 3 is at k = 1.
  CHECK(audit.max_sum[0] == doctest::Approx(1 / (std::numbers::pi * 3)));
}

TEST_CASE("tau exponent and partial sums") {
  for (const Rational g : {Rational(1), Rational(2), Rational(1, 2)}) {
    for (const Rational lambda : {Rational(0), Rational(1), Rational(3)}) {
      const auto t = tau_exponent(g, lambda);
      // sum n^g (n^(-g(1 + lambda)))^eta converges iff g - g eta (1 + lambda) < -1.
      CHECK(t.tau == (g + 1) / (g * (1 + lambda)));
      CHECK(t.clipped == (t.tau < 1 ? t.tau : Rational(1)));
    }
  }
  const auto t = tau_exponent(Rational(1), Rational(1));
  CHECK(tau_partial_sum_trend(Rational(1), Rational(1), to_double(t.tau) + 0.1, 5).converging);
  CHECK_FALSE(tau_partial_sum_trend(Rational(1), Rational(1), to_double(t.tau) - 0.1, 5).converging);
}

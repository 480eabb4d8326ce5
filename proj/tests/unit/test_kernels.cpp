#include "doctest.h"
#include "helpers.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "rdlab/kernels.hpp"

using namespace rdlab;

namespace {

KernelParams params(std::int64_t q, Rational gamma, Rational eps, Rational psi) {
  KernelParams p;
  p.q = q;
  p.gamma = gamma;
  p.epsilon = eps;
  p.psi_q = psi;
  return p;
}

// int_0^1 W(x) e^{-2 pi i k x} dx by the midpoint rule on n panels.
std::complex<double> numeric_coeff(KernelSign sign, const KernelParams& p, std::int64_t k, int n) {
  std::complex<double> sum = 0;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) / n;
    sum += W_direct(sign, x, p) * std::polar(1.0, -2 * std::numbers::pi * static_cast<double>(k) * x);
  }
  return sum / static_cast<double>(n);
}

// Direct sum over all q centres, with no neighbour shortcut.
double W_all_centres(KernelSign sign, double x, const KernelParams& p) {
  double s = 0;
  for (std::int64_t c = 0; c < p.q; ++c) {
    s += chi(sign, x - (static_cast<double>(c) + to_double(p.gamma)) / static_cast<double>(p.q), to_double(p.delta()),
             to_double(p.epsilon));
  }
  return s;
}

}  // namespace

TEST_CASE("trapezoids bracket the indicator") {
  const Rational delta(1, 20), eps(1, 2);
  Stream s(51, 0, stream_domain::kFuzz);
  for (int i = 0; i < 2000; ++i) {
    const Rational x = testing::rational_below(s, 999, 1000) / 1000;
    const Rational lo = chi_exact(KernelSign::kMinus, x, delta, eps);
    const Rational hi = chi_exact(KernelSign::kPlus, x, delta, eps);
    const Rational ind = chi_indicator(x, delta);
    CHECK(lo <= ind);
    CHECK(ind <= hi);
    CHECK(lo >= 0);
    CHECK(hi <= 1);
    CHECK(chi(KernelSign::kPlus, to_double(x), to_double(delta), to_double(eps)) ==
          doctest::Approx(to_double(hi)).epsilon(1e-12));
  }
  CHECK(chi_exact(KernelSign::kPlus, Rational(1, 16), delta, eps) == Rational(1, 2));
  CHECK(chi_exact(KernelSign::kMinus, Rational(1, 40), delta, eps) == 1);
  CHECK_THROWS(chi(KernelSign::kPlus, 0.1, 0.3, 0.5));
}

TEST_CASE("W via neighbour centres equals the full sum") {
  Stream s(52, 0, stream_domain::kFuzz);
  for (int i = 0; i < 50; ++i) {
    const auto p = params(4 + static_cast<std::int64_t>(s.below(60)), testing::rational_below(s, 10, 10) / 11,
                          testing::ratio(1 + static_cast<long>(s.below(10)), 10),
                          testing::ratio(1 + static_cast<long>(s.below(9)), 10));
    for (int j = 0; j < 40; ++j) {
      const double x = static_cast<double>(s.below(1u << 20)) / (1u << 20);
      for (auto sign : {KernelSign::kPlus, KernelSign::kMinus}) {
        CHECK(W_direct(sign, x, p) == doctest::Approx(W_all_centres(sign, x, p)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("closed-form coefficients match numerical integration") {
  const auto p = params(5, Rational(1, 3), Rational(1, 2), Rational(1, 7));
  for (auto sign : {KernelSign::kPlus, KernelSign::kMinus}) {
    for (std::int64_t k : {0, 1, 3, 5, 10, -15, 40}) {
      const auto closed = fourier_coeff(sign, p, k);
      const auto numeric = numeric_coeff(sign, p, k, 1 << 17);
      CHECK(std::abs(closed - numeric) < 1e-6);
    }
  }
  CHECK(fourier_coeff(KernelSign::kPlus, p, 7) == std::complex<double>(0, 0));
}

TEST_CASE("exact integral equals the zeroth coefficient") {
  for (auto sign : {KernelSign::kPlus, KernelSign::kMinus}) {
    const auto p = params(9, Rational(2, 7), Rational(3, 5), Rational(1, 6));
    const Rational expected = (sign == KernelSign::kPlus ? Rational(2 + p.epsilon) : Rational(2 - p.epsilon)) * p.psi_q;
    CHECK(integrate_W(sign, p) == expected);
    CHECK(integrate_W_midpoint(sign, p, 1 << 20) == doctest::Approx(to_double(expected)).epsilon(1e-9));
  }
}

TEST_CASE("reconstruction error stays below the tail bound") {
  const auto p = params(6, Rational(1, 4), Rational(1, 3), Rational(1, 5));
  for (std::int64_t K : {60, 600}) {
    double worst = 0;
    Reconstruction r;
    for (int i = 0; i < 200; ++i) {
      const Rational x = testing::ratio(i, 200);
      r = reconstruct(KernelSign::kPlus, p, K, x);
      worst = std::max(worst, std::fabs(r.value - to_double(W_exact(KernelSign::kPlus, x, p))));
    }
    CHECK(worst <= r.tail_bound);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(params(3, 0, 1, Rational(1, 10)).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(4, 0, 0, Rational(1, 10)).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(4, 0, 1, 1).validate(), std::invalid_argument);
  CHECK_NOTHROW(params(4, 1, 1, Rational(99, 100)).validate());
}

TEST_CASE("bound report") {
  const auto p = params(11, Rational(1, 3), Rational(2, 7), Rational(3, 11));
  const auto q = params(13, Rational(1, 3), Rational(1, 9), Rational(1, 17));
  const auto rep = verify_bounds(p, q, 2000);
  CHECK(rep.checks.size() == 16);
  CHECK(rep.pass());
  // Independent evaluation of one single sum.
  double sum = to_double((2 + p.epsilon) * p.psi_q);
  for (std::int64_t s = 1; s <= 2000; ++s) sum += 2 * std::abs(fourier_coeff(KernelSign::kPlus, p, s * p.q));
  const double tail = 2 / (std::numbers::pi * std::numbers::pi * 2000 * to_double(p.psi_q) * to_double(p.epsilon));
  for (const auto& c : rep.checks) {
    if (c.name == "single_sum" && c.sign == "+") CHECK(c.lhs == doctest::Approx(sum + tail).epsilon(1e-12));
  }
}

TEST_CASE("batched reconstruction agrees with the pointwise form") {
  const auto p = params(7, Rational(2, 5), Rational(3, 4), Rational(1, 9));
  std::vector<Rational> xs;
  for (int i = 0; i < 50; ++i) xs.push_back(testing::ratio(i, 50));
  const auto batch = reconstruct(KernelSign::kMinus, p, 700, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(batch[i].value == doctest::Approx(reconstruct(KernelSign::kMinus, p, 700, xs[i]).value).epsilon(1e-12));
  }
}

#include "rdlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "detail/stats.hpp"

namespace rdlab {

namespace {

constexpr double kPi = std::numbers::pi;

Rational frac(const Rational& x) { return x - Rational(floor(x)); }

// sin(pi r) with r reduced exactly into [-1, 1).
double sinpi(const Rational& r) {
  Rational m = r - 2 * Rational(floor(r / 2));
  if (m >= 1) m -= 2;
  return std::sin(kPi * to_double(m));
}

// e^{-2 pi i f}, f an exact rational.
std::complex<double> unit_phase(const Rational& f) {
  double a = to_double(frac(f));
  if (a >= 0.5) a -= 1.0;
  return {std::cos(2 * kPi * a), -std::sin(2 * kPi * a)};
}

void check_chi_params(double delta, double epsilon) {
  if (!(epsilon > 0 && epsilon <= 1)) throw std::invalid_argument("chi: epsilon must lie in (0, 1]");
  if (!(delta > 0 && delta < 0.25)) throw std::invalid_argument("chi: delta must lie in (0, 1/4)");
}

void check_chi_params(const Rational& delta, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > 1) throw std::invalid_argument("chi: epsilon must lie in (0, 1]");
  if (delta <= 0 || delta >= Rational(1, 4)) throw std::invalid_argument("chi: delta must lie in (0, 1/4)");
}

Rational signed_eps_factor(KernelSign sign, const Rational& epsilon) {
  return sign == KernelSign::kPlus ? Rational(2 + epsilon) : Rational(2 - epsilon);
}

// |W^(sq)| pi^2 s^2 psi eps = |sin(pi s psi (2 +- eps)) sin(pi s psi eps)| for s != 0.
double scaled_modulus(KernelSign sign, const KernelParams& p, std::int64_t s) {
  const Rational sr(static_cast<long>(s));
  return std::fabs(sinpi(sr * p.psi_q * signed_eps_factor(sign, p.epsilon)) * sinpi(sr * p.psi_q * p.epsilon));
}

double tail(const KernelParams& p, std::int64_t S) {
  return 2.0 / (kPi * kPi * static_cast<double>(S) * to_double(p.psi_q) * to_double(p.epsilon));
}

}  // namespace

KernelSign parse_sign(const std::string& text) {
  if (text == "+" || text == "plus") return KernelSign::kPlus;
  if (text == "-" || text == "minus") return KernelSign::kMinus;
  throw std::invalid_argument("kernel sign must be + or -");
}

const char* sign_name(KernelSign sign) { return sign == KernelSign::kPlus ? "+" : "-"; }

void KernelParams::validate() const {
  if (q < 4) throw std::invalid_argument("kernel: q must be >= 4");
  if (epsilon <= 0 || epsilon > 1) throw std::invalid_argument("kernel: epsilon must lie in (0, 1]");
  if (psi_q <= 0 || psi_q >= 1) throw std::invalid_argument("kernel: psi(q) must lie in (0, 1)");
  if (delta() >= Rational(1, 4)) throw std::invalid_argument("kernel: psi(q)/q must be < 1/4");
  if (gamma < 0 || gamma > 1) throw std::invalid_argument("kernel: gamma must lie in [0, 1]");
}

nlohmann::json KernelParams::to_json() const {
  return {{"q", q}, {"gamma", to_string(gamma)}, {"epsilon", to_string(epsilon)}, {"psi", to_string(psi_q)}};
}

double chi(KernelSign sign, double x, double delta, double epsilon) {
  check_chi_params(delta, epsilon);
  const double d = std::fabs(x - std::nearbyint(x));
  if (sign == KernelSign::kPlus) {
    if (d <= delta) return 1.0;
    if (d <= (1 + epsilon) * delta) return 1.0 + (delta - d) / (delta * epsilon);
    return 0.0;
  }
  if (d <= (1 - epsilon) * delta) return 1.0;
  if (d <= delta) return (delta - d) / (delta * epsilon);
  return 0.0;
}

Rational chi_exact(KernelSign sign, const Rational& x, const Rational& delta, const Rational& epsilon) {
  check_chi_params(delta, epsilon);
  const Rational d = nearest_int_distance(x);
  if (sign == KernelSign::kPlus) {
    if (d <= delta) return Rational(1);
    if (d <= (1 + epsilon) * delta) return 1 + (delta - d) / (delta * epsilon);
    return Rational(0);
  }
  if (d <= (1 - epsilon) * delta) return Rational(1);
  if (d <= delta) return (delta - d) / (delta * epsilon);
  return Rational(0);
}

Rational chi_indicator(const Rational& x, const Rational& delta) {
  return nearest_int_distance(x) <= delta ? Rational(1) : Rational(0);
}

// Only centres within two spacings of x can reach it: the support radius
// (1 + eps) psi / q is below 2 / q, and for q >= 4 the four offsets below
// are distinct residues.
double W_direct(KernelSign sign, double x, const KernelParams& params) {
  params.validate();
  const double q = static_cast<double>(params.q);
  const double t = q * x - to_double(params.gamma);
  const double f = std::floor(t);
  const double delta = to_double(params.delta());
  const double eps = to_double(params.epsilon);
  double sum = 0.0;
  for (int j = -1; j <= 2; ++j) sum += chi(sign, (t - f - j) / q, delta, eps);
  return sum;
}

Rational W_exact(KernelSign sign, const Rational& x, const KernelParams& params) {
  params.validate();
  const Rational q(static_cast<long>(params.q));
  const Rational t = q * x - params.gamma;
  const Rational f(floor(t));
  const Rational delta = params.delta();
  Rational sum = 0;
  for (int j = -1; j <= 2; ++j) sum += chi_exact(sign, (t - f - j) / q, delta, params.epsilon);
  return sum;
}

std::complex<double> fourier_coeff(KernelSign sign, const KernelParams& params, std::int64_t k) {
  params.validate();
  if (k == 0) return to_double(signed_eps_factor(sign, params.epsilon) * params.psi_q);
  if (k % params.q != 0) return 0.0;
  const std::int64_t s = k / params.q;
  const Rational sr(static_cast<long>(s));
  // cos A - cos B rewritten as 2 sin((A + B)/2) sin((B - A)/2).
  const double num = sinpi(sr * params.psi_q * signed_eps_factor(sign, params.epsilon)) *
                     sinpi(sr * params.psi_q * params.epsilon);
  const double sd = static_cast<double>(s);
  const double mag = num / (kPi * kPi * sd * sd * to_double(params.psi_q) * to_double(params.epsilon));
  return mag * unit_phase(sr * params.gamma);
}

Reconstruction reconstruct(KernelSign sign, const KernelParams& params, std::int64_t K, const Rational& x) {
  params.validate();
  if (K < params.q) throw std::invalid_argument("reconstruct: K must be >= q");
  const std::int64_t S = K / params.q;
  const Rational qx = Rational(static_cast<long>(params.q)) * x;
  double sum = fourier_coeff(sign, params, 0).real();
  for (std::int64_t s = 1; s <= S; ++s) {
    const auto c = fourier_coeff(sign, params, s * params.q);
    const auto e = std::conj(unit_phase(Rational(static_cast<long>(s)) * qx));
    sum += 2.0 * (c * e).real();
  }
  return {sum, tail(params, S)};
}

std::vector<Reconstruction> reconstruct(KernelSign sign, const KernelParams& params, std::int64_t K,
                                        std::span<const Rational> xs) {
  params.validate();
  if (K < params.q) throw std::invalid_argument("reconstruct: K must be >= q");
  const std::int64_t S = K / params.q;
  std::vector<std::complex<double>> coeffs(static_cast<std::size_t>(S) + 1);
  for (std::int64_t s = 0; s <= S; ++s) coeffs[static_cast<std::size_t>(s)] = fourier_coeff(sign, params, s * params.q);
  const double bound = tail(params, S);
  std::vector<Reconstruction> out;
  out.reserve(xs.size());
  const Rational q(static_cast<long>(params.q));
  for (const auto& x : xs) {
    const std::complex<double> step = std::conj(unit_phase(q * x));
    std::complex<double> e = step;
    double sum = coeffs[0].real();
    for (std::int64_t s = 1; s <= S; ++s) {
      sum += 2.0 * (coeffs[static_cast<std::size_t>(s)] * e).real();
      e *= step;
    }
    out.push_back({sum, bound});
  }
  return out;
}

Rational integrate_W(KernelSign sign, const KernelParams& params) {
  params.validate();
  const Rational q(static_cast<long>(params.q));
  const Rational delta = params.delta();
  const Rational offsets[] = {Rational(0), delta, (1 + params.epsilon) * delta, (1 - params.epsilon) * delta};
  std::set<Rational> cuts = {Rational(0), Rational(1)};
  for (std::int64_t p = 0; p < params.q; ++p) {
    const Rational centre = (Rational(static_cast<long>(p)) + params.gamma) / q;
    for (const auto& o : offsets) {
      cuts.insert(frac(centre + o));
      cuts.insert(frac(centre - o));
    }
  }
  Rational total = 0;
  auto it = cuts.begin();
  Rational prev = *it;
  for (++it; it != cuts.end(); ++it) {
    total += (*it - prev) * W_exact(sign, (prev + *it) / 2, params);
    prev = *it;
  }
  return total;
}

double integrate_W_midpoint(KernelSign sign, const KernelParams& params, std::uint64_t panels) {
  if (panels < 1) throw std::invalid_argument("integrate: panels must be >= 1");
  params.validate();
  detail::CompensatedSum sum;
  const double h = 1.0 / static_cast<double>(panels);
  for (std::uint64_t i = 0; i < panels; ++i) sum.add(W_direct(sign, (static_cast<double>(i) + 0.5) * h, params));
  return sum.value() * h;
}

bool BoundsReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

double BoundsReport::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : checks) m = std::min(m, c.margin);
  return m;
}

nlohmann::json BoundsReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : checks) {
    rows.push_back({{"name", c.name}, {"sign", c.sign}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin},
                    {"pass", c.pass}});
  }
  return {{"truncation", truncation}, {"pass", pass()}, {"min_margin", min_margin()}, {"checks", rows}};
}

BoundsReport verify_bounds(const KernelParams& params, const KernelParams& params2, std::int64_t truncation) {
  params.validate();
  params2.validate();
  if (truncation < 1) throw std::invalid_argument("verify_bounds: truncation must be >= 1");
  BoundsReport report;
  report.truncation = truncation;
  auto add = [&](std::string name, std::string sign, double lhs, double rhs, bool strict) {
    const double margin = rhs - lhs;
    report.checks.push_back({std::move(name), std::move(sign), lhs, rhs, margin, strict ? margin > 0 : margin >= 0});
  };

  double single[2][2] = {};  // [params index][sign]
  const KernelParams* both[2] = {&params, &params2};
  for (int which = 0; which < 2; ++which) {
    const KernelParams& p = *both[which];
    const double psi = to_double(p.psi_q);
    const double eps = to_double(p.epsilon);
    for (KernelSign sign : {KernelSign::kPlus, KernelSign::kMinus}) {
      double max_mod = 0.0;
      double max_scaled = 0.0;
      detail::CompensatedSum sum;
      sum.add(to_double(signed_eps_factor(sign, p.epsilon) * p.psi_q));
      for (std::int64_t s = 1; s <= truncation; ++s) {
        const double scaled = scaled_modulus(sign, p, s);
        const double sd = static_cast<double>(s);
        const double m = scaled / (kPi * kPi * sd * sd * psi * eps);
        max_mod = std::max(max_mod, m);
        max_scaled = std::max(max_scaled, scaled);
        sum.add(2.0 * m);
      }
      const double total = sum.value() + tail(p, truncation);
      single[which][sign == KernelSign::kPlus ? 0 : 1] = total;
      const std::string tag = std::string(sign_name(sign)) + (which == 0 ? "" : "~");
      add("coeff_le_psi", tag, max_mod, (2 + eps) * psi, false);
      add("coeff_le_inverse_square", tag, max_scaled, 1.0, false);
      add("single_sum", tag, total, 3.0 / std::sqrt(eps), true);
    }
  }
  const double rhs = 9.0 / std::sqrt(to_double(params.epsilon) * to_double(params2.epsilon));
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const std::string tag = std::string(a == 0 ? "+" : "-") + (b == 0 ? "+" : "-");
      add("double_sum", tag, single[0][a] * single[1][b], rhs, false);
    }
  }
  return report;
}

}  // namespace rdlab

#include "rdlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "detail/mpfr.hpp"
#include "detail/stats.hpp"
#include "rdlab/parallel.hpp"

namespace rdlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(-2 pi i f) for f in [0, 1) given as an exact rational.
std::complex<double> unit_phase(const Rational& f) {
  double a = to_double(f);
  if (a >= 0.5) a -= 1.0;
  return {std::cos(kTwoPi * a), -std::sin(kTwoPi * a)};
}

Rational frac(const Rational& x) { return x - Rational(floor(x)); }

BigInt pow_ui(unsigned base, unsigned exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

std::vector<unsigned> parse_digits(const std::string& text) {
  std::vector<unsigned> out;
  for (const auto& d : split(text, ',')) out.push_back(static_cast<unsigned>(std::stoul(d)));
  return out;
}

const char* kind_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::kLebesgue: return "lebesgue";
    case MeasureKind::kPolyDensity: return "poly_density";
    case MeasureKind::kCantor: return "cantor";
    case MeasureKind::kCantorSmoothed: return "cantor_smoothed";
    case MeasureKind::kPointMassMixture: return "point_mass_mixture";
  }
  return "unknown";
}

MeasureKind kind_from_name(const std::string& name) {
  for (auto k : {MeasureKind::kLebesgue, MeasureKind::kPolyDensity, MeasureKind::kCantor,
                 MeasureKind::kCantorSmoothed, MeasureKind::kPointMassMixture}) {
    if (name == kind_name(k)) return k;
  }
  throw std::invalid_argument("measure: unknown kind '" + name + "'");
}

}  // namespace

MeasureSpec MeasureSpec::lebesgue() { return MeasureSpec{}; }

MeasureSpec MeasureSpec::poly_density(unsigned degree) {
  MeasureSpec s;
  s.kind = MeasureKind::kPolyDensity;
  s.degree = degree;
  return s;
}

MeasureSpec MeasureSpec::cantor(unsigned base, std::vector<unsigned> digits) {
  MeasureSpec s;
  s.kind = MeasureKind::kCantor;
  s.base = base;
  s.digits = std::move(digits);
  std::sort(s.digits.begin(), s.digits.end());
  return s;
}

MeasureSpec MeasureSpec::cantor_smoothed(unsigned base, std::vector<unsigned> digits, Rational sigma) {
  MeasureSpec s = cantor(base, std::move(digits));
  s.kind = MeasureKind::kCantorSmoothed;
  s.sigma = std::move(sigma);
  return s;
}

MeasureSpec MeasureSpec::point_masses(std::vector<PointMass> masses) {
  MeasureSpec s;
  s.kind = MeasureKind::kPointMassMixture;
  s.masses = std::move(masses);
  return s;
}

void MeasureSpec::validate() const {
  if (precision_bits < 8 || precision_bits > 4096) throw std::invalid_argument("measure: precision must lie in [8, 4096]");
  if (kind == MeasureKind::kCantor || kind == MeasureKind::kCantorSmoothed) {
    if (base < 2) throw std::invalid_argument("measure: cantor base must be >= 2");
    std::set<unsigned> distinct(digits.begin(), digits.end());
    if (distinct.size() != digits.size()) throw std::invalid_argument("measure: cantor digits must be distinct");
    if (digits.size() < 2 || digits.size() >= base) {
      throw std::invalid_argument("measure: cantor digit set must have >= 2 elements and be a proper subset");
    }
    if (digits.back() >= base) throw std::invalid_argument("measure: cantor digit out of range");
    if (kind == MeasureKind::kCantorSmoothed && (sigma <= 0 || sigma > 1)) {
      throw std::invalid_argument("measure: sigma must lie in (0, 1]");
    }
  }
  if (kind == MeasureKind::kPointMassMixture) {
    if (masses.empty()) throw std::invalid_argument("measure: point mass list is empty");
    for (const auto& m : masses) {
      if (m.location < 0 || m.location >= 1) throw std::invalid_argument("measure: point mass outside [0, 1)");
      if (m.weight <= 0) throw std::invalid_argument("measure: point mass weight must be positive");
    }
  }
}

unsigned MeasureSpec::cantor_depth() const {
  BigInt limit;
  mpz_setbit(limit.get_mpz_t(), precision_bits);
  unsigned depth = 0;
  BigInt power = base;
  while (power <= limit) {
    ++depth;
    power *= base;
  }
  return depth;
}

std::string MeasureSpec::name() const {
  std::string out = kind_name(kind);
  switch (kind) {
    case MeasureKind::kPolyDensity: out += "(" + std::to_string(degree) + ")"; break;
    case MeasureKind::kCantor:
    case MeasureKind::kCantorSmoothed: {
      out += "(" + std::to_string(base) + ";";
      for (std::size_t i = 0; i < digits.size(); ++i) out += (i ? "," : "") + std::to_string(digits[i]);
      if (kind == MeasureKind::kCantorSmoothed) out += ";" + to_string(sigma);
      out += ")";
      break;
    }
    default: break;
  }
  return out;
}

nlohmann::json MeasureSpec::to_json() const {
  nlohmann::json j = {{"kind", kind_name(kind)}, {"precision_bits", precision_bits}};
  switch (kind) {
    case MeasureKind::kPolyDensity: j["degree"] = degree; break;
    case MeasureKind::kCantorSmoothed: j["sigma"] = to_string(sigma); [[fallthrough]];
    case MeasureKind::kCantor:
      j["base"] = base;
      j["digits"] = digits;
      break;
    case MeasureKind::kPointMassMixture: {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& m : masses) list.push_back({{"location", to_string(m.location)}, {"weight", to_string(m.weight)}});
      j["masses"] = list;
      break;
    }
    case MeasureKind::kLebesgue: break;
  }
  return j;
}

MeasureSpec MeasureSpec::from_json(const nlohmann::json& j) {
  MeasureSpec s;
  s.kind = kind_from_name(j.at("kind").get<std::string>());
  s.precision_bits = j.value("precision_bits", DyadicPoint::kDefaultPrecision);
  if (j.contains("degree")) s.degree = j.at("degree").get<unsigned>();
  if (j.contains("base")) s.base = j.at("base").get<unsigned>();
  if (j.contains("digits")) s.digits = j.at("digits").get<std::vector<unsigned>>();
  std::sort(s.digits.begin(), s.digits.end());
  if (j.contains("sigma")) s.sigma = parse_rational(j.at("sigma").get<std::string>());
  if (j.contains("masses")) {
    for (const auto& m : j.at("masses")) {
      s.masses.push_back({parse_rational(m.at("location").get<std::string>()),
                          parse_rational(m.at("weight").get<std::string>())});
    }
  }
  s.validate();
  return s;
}

MeasureSpec MeasureSpec::parse(const std::string& text) {
  if (!text.empty() && text.front() == '{') return from_json(nlohmann::json::parse(text));
  const auto parts = split(text, ':');
  if (parts.empty()) throw std::invalid_argument("measure: empty specification");
  MeasureSpec s;
  const std::string& head = parts[0];
  try {
    if (head == "lebesgue" && parts.size() == 1) {
      s = lebesgue();
    } else if ((head == "poly" || head == "poly_density") && parts.size() == 2) {
      s = poly_density(static_cast<unsigned>(std::stoul(parts[1])));
    } else if (head == "cantor" && parts.size() == 3) {
      s = cantor(static_cast<unsigned>(std::stoul(parts[1])), parse_digits(parts[2]));
    } else if (head == "cantor_smoothed" && parts.size() == 4) {
      s = cantor_smoothed(static_cast<unsigned>(std::stoul(parts[1])), parse_digits(parts[2]),
                          parse_rational(parts[3]));
    } else if ((head == "points" || head == "point_mass_mixture") && parts.size() == 2) {
      std::vector<PointMass> masses;
      for (const auto& item : split(parts[1], ',')) {
        const auto at = item.find('@');
        if (at == std::string::npos) {
          masses.push_back({parse_rational(item), Rational(1)});
        } else {
          masses.push_back({parse_rational(item.substr(0, at)), parse_rational(item.substr(at + 1))});
        }
      }
      s = point_masses(std::move(masses));
    } else {
      throw std::invalid_argument("measure: cannot parse '" + text + "'");
    }
  } catch (const std::logic_error& e) {
    throw std::invalid_argument(std::string("measure: ") + e.what());
  }
  s.validate();
  return s;
}

DyadicPoint MeasureSpec::draw(Stream& stream) const {
  const unsigned P = precision_bits;
  switch (kind) {
    case MeasureKind::kLebesgue: return DyadicPoint(stream.bits(P), P);
    case MeasureKind::kPolyDensity: {
      // Inverse CDF: x = U^(1/(d+1)).
      const unsigned extra = P + 64;
      detail::Real u(extra + 64);
      mpfr_set_z(u.get(), stream.bits(extra).get_mpz_t(), MPFR_RNDN);
      mpfr_div_2ui(u.get(), u.get(), extra, MPFR_RNDN);
      mpfr_rootn_ui(u.get(), u.get(), degree + 1, MPFR_RNDD);
      Rational x = u.floor_dyadic(P);
      if (x >= 1) x = 1 - Rational(1, 1) / Rational(pow_ui(2, P));
      return DyadicPoint::floor_of(x, P);
    }
    case MeasureKind::kCantor:
    case MeasureKind::kCantorSmoothed: {
      const unsigned depth = cantor_depth();
      BigInt numerator = 0;
      for (unsigned j = 0; j < depth; ++j) {
        numerator *= base;
        numerator += digits[stream.below(static_cast<std::uint64_t>(digits.size()))];
      }
      const Rational c = make_rational(numerator, pow_ui(base, depth));
      if (kind == MeasureKind::kCantor) {
        // c + 2^-P <= b^-depth keeps the first depth digits.
        return DyadicPoint::ceil_of(c, P);
      }
      Rational u(stream.bits(P));
      mpq_div_2exp(u.get_mpq_t(), u.get_mpq_t(), P);
      return DyadicPoint::floor_of(frac(c + sigma * u), P);
    }
    case MeasureKind::kPointMassMixture: {
      BigInt lcm = 1;
      for (const auto& m : masses) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.weight.get_den_mpz_t());
      std::vector<BigInt> cumulative;
      BigInt total = 0;
      for (const auto& m : masses) {
        total += BigInt(m.weight * lcm);
        cumulative.push_back(total);
      }
      const BigInt pick = stream.below(total);
      for (std::size_t i = 0; i < masses.size(); ++i) {
        if (pick < cumulative[i]) return DyadicPoint::floor_of(masses[i].location, P);
      }
      return DyadicPoint::floor_of(masses.back().location, P);
    }
  }
  throw std::logic_error("measure: unhandled kind");
}

std::vector<DyadicPoint> sample(const MeasureSpec& spec, std::size_t count, std::uint64_t seed, unsigned threads) {
  spec.validate();
  if (count < 1) throw std::invalid_argument("sample: M must be >= 1");
  std::vector<DyadicPoint> out(count);
  parallel_for(count, threads, [&](std::size_t i) {
    Stream stream(seed, i, stream_domain::kSampler);
    out[i] = spec.draw(stream);
  });
  return out;
}

EmpiricalMeasure::EmpiricalMeasure(std::span<const DyadicPoint> samples) {
  if (samples.empty()) throw std::invalid_argument("empirical measure: no samples");
  bits_.reserve(samples.size());
  for (const auto& x : samples) bits_.push_back(x.fraction_bits128());
}

MuHatEstimate EmpiricalMeasure::mu_hat(const BigInt& t, unsigned threads) const {
  const double se = 1.0 / std::sqrt(static_cast<double>(bits_.size()));
  if (t == 0) return {{1.0, 0.0}, se};
  const u128 tt = to_u128(t);
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (bits_.size() + kChunk - 1) / kChunk;
  std::vector<std::complex<double>> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    double re = 0.0;
    double im = 0.0;
    const std::size_t end = std::min(bits_.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      // Signed reading of t x mod 1 in [-1/2, 1/2).
      const auto phase = static_cast<__int128>(tt * bits_[i]);
      const double a = std::ldexp(static_cast<double>(phase), -128);
      re += std::cos(kTwoPi * a);
      im -= std::sin(kTwoPi * a);
    }
    partial[c] = {re, im};
  });
  std::complex<double> total = 0.0;
  for (const auto& p : partial) total += p;
  return {total / static_cast<double>(bits_.size()), se};
}

MuHatEstimate empirical_mu_hat(std::span<const DyadicPoint> samples, const BigInt& t) {
  return EmpiricalMeasure(samples).mu_hat(t);
}

CantorTransform cantor_mu_hat_exact(unsigned base, std::span<const unsigned> digits, const BigInt& t,
                                    unsigned depth) {
  if (depth < 1) throw std::invalid_argument("cantor transform: depth must be >= 1");
  if (base < 2 || digits.empty()) throw std::invalid_argument("cantor transform: invalid base or digit set");
  std::complex<double> product = 1.0;
  BigInt modulus = 1;
  for (unsigned j = 1; j <= depth; ++j) {
    modulus *= base;
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), t.get_mpz_t(), modulus.get_mpz_t());
    std::complex<double> factor = 0.0;
    for (unsigned d : digits) {
      BigInt rd = r * d;
      mpz_fdiv_r(rd.get_mpz_t(), rd.get_mpz_t(), modulus.get_mpz_t());
      factor += unit_phase(make_rational(rd, modulus));
    }
    product *= factor / static_cast<double>(digits.size());
  }
  double bound = 0.0;
  if (t != 0) {
    bound = std::exp(std::log(kTwoPi) + log_big(BigInt(abs(t))) - depth * std::log(static_cast<double>(base)));
  }
  return {product, bound};
}

MuHatSource exact_mu_hat(const MeasureSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case MeasureKind::kLebesgue:
      return {"exact:" + spec.name(),
              [](const BigInt& t) { return t == 0 ? std::complex<double>(1.0) : std::complex<double>(0.0); }};
    case MeasureKind::kPolyDensity: {
      const unsigned d = spec.degree;
      return {"exact:" + spec.name(), [d](const BigInt& t) -> std::complex<double> {
                if (t == 0) return 1.0;
                // J_k = int_0^1 x^k e^{-i w x} dx with J_0 = 0 at integer t.
                const std::complex<double> iw(0.0, kTwoPi * t.get_d());
                std::complex<double> J = 0.0;
                for (unsigned k = 1; k <= d; ++k) J = -1.0 / iw + (static_cast<double>(k) / iw) * J;
                return static_cast<double>(d + 1) * J;
              }};
    }
    case MeasureKind::kCantor:
    case MeasureKind::kCantorSmoothed: {
      const unsigned depth = spec.cantor_depth();
      return {"exact:" + spec.name(), [spec, depth](const BigInt& t) -> std::complex<double> {
                auto base = cantor_mu_hat_exact(spec.base, spec.digits, t, depth).value;
                if (spec.kind == MeasureKind::kCantor || t == 0) return base;
                // Transform of sigma U: (1 - e^{-i theta}) / (i theta), theta = 2 pi t sigma.
                const Rational ts = Rational(t) * spec.sigma;
                const double theta = kTwoPi * to_double(ts);
                const std::complex<double> numer = 1.0 - unit_phase(frac(ts));
                return base * numer / std::complex<double>(0.0, theta);
              }};
    }
    case MeasureKind::kPointMassMixture: {
      Rational total = 0;
      for (const auto& m : spec.masses) total += m.weight;
      return {"exact:" + spec.name(), [masses = spec.masses, total](const BigInt& t) {
                std::complex<double> sum = 0.0;
                for (const auto& m : masses) sum += to_double(m.weight / total) * unit_phase(frac(Rational(t) * m.location));
                return sum;
              }};
    }
  }
  throw std::logic_error("exact_mu_hat: unhandled kind");
}

MuHatSource empirical_source(const MeasureSpec& spec, std::size_t count, std::uint64_t seed, unsigned threads) {
  auto points = sample(spec, count, seed, threads);
  auto measure = std::make_shared<EmpiricalMeasure>(points);
  return {"empirical:" + spec.name(), [measure, threads](const BigInt& t) { return measure->mu_hat(t, threads).value; }};
}

DecayModel DecayModel::power(Rational c, Rational a) {
  DecayModel m{DecayForm::kPower, std::move(c), std::move(a)};
  m.validate();
  return m;
}

DecayModel DecayModel::logpow(Rational c, Rational A) {
  DecayModel m{DecayForm::kLogPow, std::move(c), std::move(A)};
  m.validate();
  return m;
}

DecayModel DecayModel::expsqrtlog(Rational c2) {
  DecayModel m{DecayForm::kExpSqrtLog, Rational(1), std::move(c2)};
  m.validate();
  return m;
}

void DecayModel::validate() const {
  if (c <= 0) throw std::invalid_argument("decay model: c must be positive");
  if (exponent <= 0) throw std::invalid_argument("decay model: exponent must be positive");
}

double DecayModel::log_h(const BigInt& t) const {
  if (t < 2) throw std::invalid_argument("decay model: h is evaluated for t >= 2");
  switch (form) {
    case DecayForm::kPower: return std::log(to_double(c)) - to_double(exponent) * log_big(t);
    case DecayForm::kLogPow: return std::log(to_double(c)) - to_double(exponent) * std::log(log_big(t));
    case DecayForm::kExpSqrtLog: return -to_double(exponent) * std::sqrt(log_big(t + 1));
  }
  return 0.0;
}

std::string DecayModel::name() const {
  switch (form) {
    case DecayForm::kPower: return "power:" + to_string(c) + ":" + to_string(exponent);
    case DecayForm::kLogPow: return "logpow:" + to_string(c) + ":" + to_string(exponent);
    case DecayForm::kExpSqrtLog: return "expsqrtlog:" + to_string(exponent);
  }
  return "unknown";
}

nlohmann::json DecayModel::to_json() const {
  static const char* names[] = {"power", "logpow", "expsqrtlog"};
  return {{"form", names[static_cast<int>(form)]}, {"c", to_string(c)}, {"exponent", to_string(exponent)}};
}

DecayModel DecayModel::parse(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    const auto j = nlohmann::json::parse(text);
    const auto form = j.at("form").get<std::string>();
    const Rational e = parse_rational(j.at("exponent").get<std::string>());
    if (form == "expsqrtlog") return expsqrtlog(e);
    const Rational c = parse_rational(j.value("c", std::string("1")));
    if (form == "power") return power(c, e);
    if (form == "logpow") return logpow(c, e);
    throw std::invalid_argument("decay model: unknown form '" + form + "'");
  }
  const auto parts = split(text, ':');
  if (parts.size() == 3 && parts[0] == "power") return power(parse_rational(parts[1]), parse_rational(parts[2]));
  if (parts.size() == 3 && parts[0] == "logpow") return logpow(parse_rational(parts[1]), parse_rational(parts[2]));
  if (parts.size() == 2 && parts[0] == "expsqrtlog") return expsqrtlog(parse_rational(parts[1]));
  throw std::invalid_argument("decay model: cannot parse '" + text + "'");
}

nlohmann::json DecayAuditReport::to_json() const {
  nlohmann::json cn = nlohmann::json::array();
  for (const auto& [n, c] : c_n) cn.push_back({{"n", n}, {"c_n", c}});
  nlohmann::json pr = nlohmann::json::array();
  for (const auto& [t, r] : ratios) pr.push_back({{"t", to_string(t)}, {"ratio", r}});
  return {{"sequence_half", {{"c_max", c_max}, {"slope", c_slope}, {"bounded", c_bounded}, {"values", cn}}},
          {"transform_half", {{"ratio_max", ratio_max}, {"slope", ratio_slope}, {"bounded", ratio_bounded}, {"values", pr}}},
          {"slope_tolerance", slope_tolerance},
          {"pass", pass()},
          {"warnings", warnings}};
}

DecayAuditReport decay_audit(const MuHatSource& source, const DecayModel& model, std::span<const BigInt> terms,
                             const Rational& rho, std::size_t n_lo, std::size_t n_hi, const DecayProbe& probe,
                             double slope_tolerance) {
  model.validate();
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("decay_audit: empty index range");
  if (terms.size() < n_hi) throw std::invalid_argument("decay_audit: fewer terms than the index range needs");
  if (probe.ratio <= 1) throw std::invalid_argument("decay_audit: probe ratio must exceed 1");
  DecayAuditReport report;
  report.slope_tolerance = slope_tolerance;
  if (rho <= 2) report.warnings.push_back("rho <= 2: the balance condition is only meaningful for rho > 2");

  const double rho_d = to_double(rho);
  std::vector<std::pair<double, double>> c_points;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    if (terms[n - 1] < 2) continue;
    const double log_c = model.log_h(terms[n - 1]) + rho_d * std::log(static_cast<double>(n));
    const double c = std::exp(log_c);
    report.c_n.emplace_back(n, c);
    report.c_max = std::max(report.c_max, c);
    c_points.emplace_back(std::log(static_cast<double>(n)), log_c);
  }
  report.c_slope = detail::least_squares_slope(c_points);
  report.c_bounded = report.c_slope <= slope_tolerance;

  std::set<BigInt> probes(probe.extra.begin(), probe.extra.end());
  Rational power = 1;
  while (floor(power) <= probe.t_max) {
    probes.insert(floor(power));
    power *= probe.ratio;
  }
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    for (unsigned k = 1; k <= probe.multiples; ++k) probes.insert(terms[n - 1] * k);
  }
  std::vector<std::pair<double, double>> r_points;
  for (const auto& t : probes) {
    if (t < 2) continue;
    const double modulus = std::abs(source.eval(t));
    const double log_h = model.log_h(t);
    const double ratio = modulus == 0.0 ? 0.0 : std::exp(std::log(modulus) - log_h);
    report.ratios.emplace_back(t, ratio);
    report.ratio_max = std::max(report.ratio_max, ratio);
    if (modulus > 0.0) r_points.emplace_back(log_big(t), std::log(modulus) - log_h);
  }
  report.ratio_slope = detail::least_squares_slope(r_points);
  report.ratio_bounded = report.ratio_slope <= slope_tolerance;
  return report;
}

nlohmann::json CriteriaAudit::to_json() const { return {{"max_sum", max_sum}, {"weighted_sum", weighted_sum}}; }

CriteriaAudit convergence_criteria_audit(const MuHatSource& source, std::span<const BigInt> terms, std::size_t K,
                                         std::size_t N) {
  if (K < 1 || N < 1) throw std::invalid_argument("criteria audit: K and N must be >= 1");
  if (terms.size() < N) throw std::invalid_argument("criteria audit: fewer than N terms supplied");
  CriteriaAudit audit;
  double max_total = 0.0;
  double weighted_total = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    double row_max = 0.0;
    double row_weighted = 0.0;
    for (std::size_t k = 1; k <= K; ++k) {
      const BigInt t = terms[n] * static_cast<unsigned long>(k);
      const double plus = std::abs(source.eval(t));
      const double minus = std::abs(source.eval(BigInt(-t)));
      row_max = std::max({row_max, plus, minus});
      row_weighted += (plus + minus) / static_cast<double>(k);
    }
    max_total += row_max;
    weighted_total += row_weighted;
    audit.max_sum.push_back(max_total);
    audit.weighted_sum.push_back(weighted_total);
  }
  return audit;
}

TauExponent tau_exponent(const Rational& g, const Rational& lambda) {
  if (g <= 0) throw std::invalid_argument("tau: growth exponent g must be positive");
  if (lambda < 0) throw std::invalid_argument("tau: lambda must be nonnegative");
  Rational tau = (g + 1) / (g * (1 + lambda));
  Rational clipped = tau < 1 ? tau : Rational(1);
  return {tau, clipped};
}

PartialSumTrend tau_partial_sum_trend(const Rational& g, const Rational& lambda, double eta, unsigned decades) {
  if (g <= 0 || lambda < 0) throw std::invalid_argument("tau trend: need g > 0 and lambda >= 0");
  if (decades < 2 || decades > 8) throw std::invalid_argument("tau trend: decades must lie in [2, 8]");
  // q (psi(q) / q)^eta = q^(1 - eta (1 + lambda)) with q = n^g.
  const double exponent = to_double(g) * (1.0 - eta * (1.0 + to_double(lambda)));
  PartialSumTrend trend;
  trend.eta = eta;
  std::size_t lo = 1;
  std::size_t hi = 10;
  for (unsigned d = 0; d < decades; ++d) {
    double sum = 0.0;
    for (std::size_t n = lo; n <= hi; ++n) sum += std::exp(exponent * std::log(static_cast<double>(n)));
    trend.decade_increments.push_back(sum);
    lo = hi + 1;
    hi *= 10;
  }
  for (std::size_t i = 1; i < trend.decade_increments.size(); ++i) {
    trend.increment_ratios.push_back(trend.decade_increments[i] / trend.decade_increments[i - 1]);
  }
  trend.converging = trend.increment_ratios.back() < 1.0;
  return trend;
}

}  // namespace rdlab

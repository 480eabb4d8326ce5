#include "rdlab/approx.hpp"

#include <sstream>
#include <stdexcept>

#include "detail/mpfr.hpp"

namespace rdlab {

namespace {

constexpr mpfr_prec_t kWorkingBits = ApproxFunction::kTranscendentalBits + 64;

const Rational kHalf(1, 2);

Rational min_half(const Rational& x) { return x < kHalf ? x : kHalf; }

Rational eval_power(const PowerFamily& f, const BigInt& q) {
  if (f.c == 0) return Rational(0);
  if (f.lambda.get_den() == 1 && f.lambda >= 0 && f.lambda.get_num().fits_ulong_p()) {
    BigInt qpow;
    mpz_pow_ui(qpow.get_mpz_t(), q.get_mpz_t(), f.lambda.get_num().get_ui());
    return min_half(f.c / Rational(qpow));
  }
  detail::Real base(kWorkingBits);
  detail::Real expo(kWorkingBits);
  base.set(q);
  expo.set(Rational(-f.lambda));
  mpfr_pow(base.get(), base.get(), expo.get(), MPFR_RNDN);
  detail::Real c(kWorkingBits);
  c.set(f.c);
  mpfr_mul(base.get(), base.get(), c.get(), MPFR_RNDN);
  if (mpfr_cmp_d(base.get(), 0.5) >= 0) return kHalf;
  return base.floor_dyadic(ApproxFunction::kTranscendentalBits);
}

Rational eval_logpow(const LogPowFamily& f, const BigInt& q) {
  if (f.c == 0) return Rational(0);
  detail::Real x(kWorkingBits);
  x.set(BigInt(q + 2));
  mpfr_log(x.get(), x.get(), MPFR_RNDN);
  detail::Real expo(kWorkingBits);
  expo.set(Rational(-f.beta));
  mpfr_pow(x.get(), x.get(), expo.get(), MPFR_RNDN);
  detail::Real c(kWorkingBits);
  c.set(f.c);
  mpfr_mul(x.get(), x.get(), c.get(), MPFR_RNDN);
  if (mpfr_cmp_d(x.get(), 0.5) >= 0) return kHalf;
  return x.floor_dyadic(ApproxFunction::kTranscendentalBits);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

void require_nonnegative(const Rational& c, const char* what) {
  if (c < 0) throw std::invalid_argument(std::string(what) + " must be nonnegative");
}

}  // namespace

Rational clamp_unit(const Rational& x) {
  if (x < 0) return Rational(0);
  if (x > 1) return Rational(1);
  return x;
}

ApproxFunction ApproxFunction::power(Rational c, Rational lambda) {
  require_nonnegative(c, "power: c");
  return ApproxFunction(PowerFamily{std::move(c), std::move(lambda)});
}

ApproxFunction ApproxFunction::logpow(Rational c, Rational beta) {
  require_nonnegative(c, "logpow: c");
  return ApproxFunction(LogPowFamily{std::move(c), std::move(beta)});
}

ApproxFunction ApproxFunction::constant(Rational c) {
  return ApproxFunction(ConstantFamily{clamp_unit(c)});
}

ApproxFunction ApproxFunction::indexed(std::vector<Rational> table) {
  for (auto& v : table) v = clamp_unit(v);
  return ApproxFunction(IndexedFamily{std::move(table)});
}

ApproxFunction ApproxFunction::custom(std::string name,
                                      std::function<Rational(const BigInt&, std::size_t)> fn) {
  if (!fn) throw std::invalid_argument("custom: empty callback");
  return ApproxFunction(CustomFamily{std::move(name), std::move(fn)});
}

Rational ApproxFunction::operator()(const BigInt& q, std::size_t n) const {
  if (q < 1) throw std::invalid_argument("psi: q must be >= 1");
  return std::visit(
      [&](const auto& f) -> Rational {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, PowerFamily>) {
          return eval_power(f, q);
        } else if constexpr (std::is_same_v<F, LogPowFamily>) {
          return eval_logpow(f, q);
        } else if constexpr (std::is_same_v<F, ConstantFamily>) {
          return f.c;
        } else if constexpr (std::is_same_v<F, IndexedFamily>) {
          if (n < 1 || n > f.table.size()) {
            throw std::out_of_range("psi: index " + std::to_string(n) + " outside indexed table of size " +
                                    std::to_string(f.table.size()));
          }
          return f.table[n - 1];
        } else {
          return clamp_unit(f.fn(q, n));
        }
      },
      family_);
}

std::optional<bool> ApproxFunction::nonincreasing() const {
  return std::visit(
      [](const auto& f) -> std::optional<bool> {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, PowerFamily>) {
          return f.lambda >= 0;
        } else if constexpr (std::is_same_v<F, LogPowFamily>) {
          return f.beta >= 0;
        } else if constexpr (std::is_same_v<F, ConstantFamily>) {
          return true;
        } else {
          return std::nullopt;
        }
      },
      family_);
}

nlohmann::json ApproxFunction::to_json() const {
  return std::visit(
      [](const auto& f) -> nlohmann::json {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, PowerFamily>) {
          return {{"family", "power"}, {"c", to_string(f.c)}, {"lambda", to_string(f.lambda)}};
        } else if constexpr (std::is_same_v<F, LogPowFamily>) {
          return {{"family", "logpow"}, {"c", to_string(f.c)}, {"beta", to_string(f.beta)}};
        } else if constexpr (std::is_same_v<F, ConstantFamily>) {
          return {{"family", "constant"}, {"c", to_string(f.c)}};
        } else if constexpr (std::is_same_v<F, IndexedFamily>) {
          nlohmann::json table = nlohmann::json::array();
          for (const auto& v : f.table) table.push_back(to_string(v));
          return {{"family", "indexed"}, {"table", table}};
        } else {
          return {{"family", "custom"}, {"name", f.name}};
        }
      },
      family_);
}

namespace {

Rational json_rational(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("psi: missing field '") + key + "'");
  const auto& v = j.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(BigInt(std::to_string(v.get<long long>())));
  throw std::invalid_argument(std::string("psi: field '") + key + "' must be a \"p/q\" string or integer");
}

}  // namespace

ApproxFunction ApproxFunction::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family")) throw std::invalid_argument("psi: expected object with 'family'");
  const std::string family = j.at("family").get<std::string>();
  if (family == "power") return power(json_rational(j, "c"), json_rational(j, "lambda"));
  if (family == "logpow") return logpow(json_rational(j, "c"), json_rational(j, "beta"));
  if (family == "constant") return constant(json_rational(j, "c"));
  if (family == "indexed") {
    if (!j.contains("table") || !j.at("table").is_array()) throw std::invalid_argument("psi: indexed needs 'table'");
    std::vector<Rational> table;
    for (const auto& v : j.at("table")) table.push_back(parse_rational(v.get<std::string>()));
    return indexed(std::move(table));
  }
  throw std::invalid_argument("psi: unknown or non-serializable family '" + family + "'");
}

ApproxFunction ApproxFunction::parse(const std::string& text) {
  if (!text.empty() && text.front() == '{') return from_json(nlohmann::json::parse(text));
  auto parts = split(text, ':');
  if (parts.empty()) throw std::invalid_argument("psi: empty spec");
  const std::string& family = parts[0];
  if (family == "constant" && parts.size() == 2) return constant(parse_rational(parts[1]));
  if (family == "power" && parts.size() == 3) return power(parse_rational(parts[1]), parse_rational(parts[2]));
  if (family == "logpow" && parts.size() == 3) return logpow(parse_rational(parts[1]), parse_rational(parts[2]));
  if (family == "indexed" && parts.size() == 2) {
    std::vector<Rational> table;
    for (const auto& v : split(parts[1], ',')) table.push_back(parse_rational(v));
    return indexed(std::move(table));
  }
  throw std::invalid_argument("psi: cannot parse '" + text + "'");
}

Rational eval_psi(const ApproxFunction& psi, const BigInt& q, std::size_t n) { return psi(q, n); }

}  // namespace rdlab

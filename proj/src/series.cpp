#include "rdlab/series.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "detail/mpfr.hpp"

namespace rdlab {

namespace {

constexpr mpfr_prec_t kPrecision = 256;

void require_range(const NonnegSeries& series, std::size_t N) {
  if (N < 1) throw std::invalid_argument("series check: N must be >= 1");
  if (N > series.size()) throw std::invalid_argument("series check: N exceeds the number of terms");
}

// Accumulates sum_{n <= N} a_n / S_n^(1 + xi) into total, recording the
// running value when profile is non-null.
void ratio_accumulate(const NonnegSeries& series, const Rational& xi, std::size_t N, detail::Real& total,
                      std::vector<double>* profile) {
  if (xi <= 0) throw std::invalid_argument("ratio series check: xi must be positive");
  require_range(series, N);
  detail::Real exponent(kPrecision);
  exponent.set(Rational(1 + xi));
  mpfr_set_zero(total.get(), 1);
  detail::Real s(kPrecision);
  detail::Real a(kPrecision);
  for (std::size_t n = 1; n <= N; ++n) {
    s.set(series.prefix_sum(n));
    mpfr_pow(s.get(), s.get(), exponent.get(), MPFR_RNDN);
    a.set(series.term(n));
    mpfr_div(a.get(), a.get(), s.get(), MPFR_RNDN);
    mpfr_add(total.get(), total.get(), a.get(), MPFR_RNDN);
    if (profile) profile->push_back(total.to_double());
  }
}

}  // namespace

NonnegSeries::NonnegSeries(std::vector<Rational> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("series: no terms");
  if (terms_.front() <= 0) throw std::invalid_argument("series: a_1 must be positive");
  Rational sum = 0;
  prefix_.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (t < 0) throw std::invalid_argument("series: terms must be nonnegative");
    sum += t;
    prefix_.push_back(sum);
  }
}

NonnegSeries NonnegSeries::parse(const std::string& text) {
  std::istringstream in(text);
  std::vector<Rational> terms;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    terms.push_back(parse_rational(line.substr(first, last - first + 1)));
  }
  return NonnegSeries(std::move(terms));
}

NonnegSeries NonnegSeries::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("series: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

nlohmann::json SeriesCheck::to_json() const { return {{"B_N", B}, {"bound", bound}, {"pass", pass}}; }

SeriesCheck ratio_series_check(const NonnegSeries& series, const Rational& xi, std::size_t N) {
  detail::Real total(kPrecision);
  ratio_accumulate(series, xi, N, total, nullptr);
  detail::Real bound(kPrecision);
  detail::Real neg_xi(kPrecision);
  neg_xi.set(Rational(-xi));
  bound.set(series.term(1));
  mpfr_pow(bound.get(), bound.get(), neg_xi.get(), MPFR_RNDN);
  detail::Real factor(kPrecision);
  factor.set(Rational(1 + 1 / xi));
  mpfr_mul(bound.get(), bound.get(), factor.get(), MPFR_RNDN);
  return {total.to_double(), bound.to_double(), mpfr_lessequal_p(total.get(), bound.get()) != 0};
}

SeriesCheck log_bound_check(const NonnegSeries& series, std::size_t N) {
  require_range(series, N);
  Rational B = 0;
  for (std::size_t n = 1; n <= N; ++n) B += series.term(n) / series.prefix_sum(n);
  const Rational ratio = series.prefix_sum(N) / series.term(1);
  // log S_N - log a_1 = log(S_N / a_1), taken on the exact ratio.
  const double log_ratio = std::log(to_double(ratio));
  const double bound = 1.0 + log_ratio;
  const double b = to_double(B);
  return {b, bound, b <= bound + kLogBoundSlack};
}

std::vector<double> ratio_series_profile(const NonnegSeries& series, const Rational& xi, std::size_t N) {
  std::vector<double> out;
  detail::Real total(kPrecision);
  ratio_accumulate(series, xi, N, total, &out);
  return out;
}

std::vector<double> log_bound_profile(const NonnegSeries& series, std::size_t N) {
  require_range(series, N);
  std::vector<double> out;
  Rational B = 0;
  for (std::size_t n = 1; n <= N; ++n) {
    B += series.term(n) / series.prefix_sum(n);
    out.push_back(to_double(B));
  }
  return out;
}

}  // namespace rdlab

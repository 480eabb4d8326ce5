#pragma once

// Partial-sum oracles for series of nonnegative terms with a_1 > 0.

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "rdlab/core.hpp"

namespace rdlab {

class NonnegSeries {
 public:
  // Throws std::invalid_argument on a negative term, an empty list or a_1 = 0.
  explicit NonnegSeries(std::vector<Rational> terms);

  std::size_t size() const { return terms_.size(); }
  const Rational& term(std::size_t n) const { return terms_.at(n - 1); }          // 1-based
  const Rational& prefix_sum(std::size_t n) const { return prefix_.at(n - 1); }  // S_n

  // One rational per line ("p/q", integers or decimals); '#' starts a comment.
  static NonnegSeries parse(const std::string& text);
  static NonnegSeries read_file(const std::string& path);

 private:
  std::vector<Rational> terms_;
  std::vector<Rational> prefix_;
};

struct SeriesCheck {
  double B = 0.0;      // partial sum B_N
  double bound = 0.0;
  bool pass = false;
  nlohmann::json to_json() const;
};

// B_N = sum_{n <= N} a_n / S_n^(1 + xi) against a_1^-xi (1 + 1/xi), both
// evaluated with MPFR at 256 bits.
SeriesCheck ratio_series_check(const NonnegSeries& series, const Rational& xi, std::size_t N);

// B_N = sum_{n <= N} a_n / S_n (exact) against 1 + log S_N - log a_1 in
// double; the bound side carries a 1e-9 slack.
SeriesCheck log_bound_check(const NonnegSeries& series, std::size_t N);
inline constexpr double kLogBoundSlack = 1e-9;

// B_n for n = 1..N.
std::vector<double> ratio_series_profile(const NonnegSeries& series, const Rational& xi, std::size_t N);
std::vector<double> log_bound_profile(const NonnegSeries& series, std::size_t N);

}  // namespace rdlab

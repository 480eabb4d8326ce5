#include "doctest.h"
#include "helpers.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "rdlab/primes.hpp"
#include "rdlab/sequences.hpp"

using namespace rdlab;

namespace {

PCParams example_params(const BigInt& n1, std::uint64_t seed = 7) {
  PCParams p;
  p.rho1 = 3;
  p.rho2 = 19;
  p.c = 2;
  p.n1 = n1;
  p.seed = seed;
  return p;
}

std::vector<BigInt> copy(std::span<const BigInt> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("geometric and smooth sequences") {
  auto g = gen_geometric(BigInt(3), 20);
  CHECK(g.term(1) == 3);
  CHECK(g.term(20) == BigInt("3486784401"));
  auto s = gen_smooth({BigInt(3)}, 20);
  CHECK(copy(s.prefix(20)) == copy(g.prefix(20)));

  // {2, 3}-smooth numbers > 1 by brute force.
  std::vector<BigInt> brute;
  for (unsigned long n = 2; brute.size() < 60; ++n) {
    unsigned long m = n;
    while (m % 2 == 0) m /= 2;
    while (m % 3 == 0) m /= 3;
    if (m == 1) brute.emplace_back(n);
  }
  auto smooth = gen_smooth({BigInt(3), BigInt(2)}, 60);
  CHECK(copy(smooth.prefix(60)) == brute);
  CHECK_THROWS(gen_smooth({BigInt(4)}, 5));
  CHECK_THROWS(gen_geometric(BigInt(1), 5));
}

TEST_CASE("range and power sequences") {
  auto r = gen_range(BigInt(2), 20);
  CHECK(r.term(1) == 2);
  CHECK(r.term(20) == 21);
  auto p = gen_power(3, 10);
  CHECK(p.term(10) == 1000);
}

TEST_CASE("block construction follows the block and bracket rules") {
  const auto params = example_params(BigInt(4));
  auto seq = gen_pc(params, 300);
  const auto terms = copy(seq.prefix(300));
  require_strictly_increasing(terms);
  // Block 1: s * 4 for s = 1..16.
  for (unsigned long s = 1; s <= 16; ++s) CHECK(terms[s - 1] == BigInt(4 * s));
  // Block 2 leader in [ceil(4^19 / 2), 4^19].
  const BigInt top = BigInt(1) << 38;
  const BigInt n2 = terms[16];
  CHECK(n2 >= top / 2);
  CHECK(n2 <= top);
  for (std::size_t i = 16; i < 300; ++i) CHECK(terms[i] == n2 * BigInt(static_cast<unsigned long>(i - 15)));
  for (std::size_t m = 1; m <= terms.size(); ++m) CHECK(terms[m - 1] > BigInt(static_cast<unsigned long>(m)));
  // Same seed, same sequence; another seed moves the second leader.
  CHECK(copy(gen_pc(params, 300).prefix(300)) == terms);
  CHECK(gen_pc(example_params(BigInt(4), 8), 17).term(17) != n2);
}

TEST_CASE("prime variant uses prime leaders and prime multipliers") {
  const auto params = example_params(BigInt(5));
  auto seq = gen_pc_prime(params, 200);
  const auto terms = copy(seq.prefix(200));
  require_strictly_increasing(terms);
  // Block 1: p * 5 for the primes p <= 25.
  const std::vector<unsigned long> small = {2, 3, 5, 7, 11, 13, 17, 19, 23};
  for (std::size_t i = 0; i < small.size(); ++i) CHECK(terms[i] == BigInt(5 * small[i]));
  const BigInt n2 = terms[small.size()] / 2;
  CHECK(is_prime(n2));
  const BigInt top = floor_pow(BigInt(5), Rational(19));
  CHECK(n2 >= rdlab::ceil(Rational(top, 2)));
  // Smallest prime in the bracket.
  for (BigInt v = rdlab::ceil(Rational(top, 2)); v < n2; ++v) CHECK_FALSE(is_prime(v));

  // Prime-multiplier terms are a subset of all-multiplier terms with the same leaders.
  auto all = make_block_sequence(params, BlockLeader::kSmallestPrime, BlockMultipliers::kAll, 2000);
  const auto all_terms = copy(all.prefix(2000));
  const std::set<BigInt> pool(all_terms.begin(), all_terms.end());
  for (std::size_t i = 0; i < 100; ++i) CHECK(pool.count(terms[i]) == 1);

  auto p3 = example_params(BigInt(5));
  p3.c = 3;
  const auto prov = gen_pc_prime(p3, 5).provenance();
  CHECK_FALSE(prov.notes.empty());
  CHECK_THROWS(gen_pc_prime(example_params(BigInt(4)), 5));
}

TEST_CASE("parameter validation") {
  auto p = example_params(BigInt(4));
  CHECK_NOTHROW(p.validate());
  p.rho2 = 18;  // 6 rho1 = 18 is not strictly below rho2
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = example_params(BigInt(4));
  p.c = 1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = example_params(BigInt(1));
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("growth audit") {
  const auto params = example_params(BigInt(4));
  auto seq = gen_pc(params, 300);
  const auto report = growth_slope_audit(seq.prefix(300), params, 300);
  CHECK(report.audit_start == 17);
  CHECK(report.bound == doctest::Approx(19.0 / 2 + 1));
  CHECK(report.pass);
  CHECK(report.max_slope <= report.bound);
  // Oracle for one slope.
  const auto& [m, slope] = report.slopes.front();
  CHECK(slope == doctest::Approx(log_big(seq.term(m)) / std::log(static_cast<double>(m))));
  // A vacuous range passes.
  CHECK(growth_slope_audit(seq.prefix(10), params, 10).pass);
}

TEST_CASE("Liouville growth sequence meets its growth condition") {
  auto seq = gen_liouville_growth(Rational(3), 200);
  const auto terms = seq.prefix(200);
  require_strictly_increasing(terms);
  CHECK(liouville_growth_check(terms, Rational(3), Rational(1), 2, 200).holds);
  // A slower sequence fails from some index on.
  auto slow = gen_power(4, 200);
  const auto r = liouville_growth_check(slow.prefix(200), Rational(3), Rational(1), 2, 200);
  CHECK_FALSE(r.holds);
  REQUIRE(r.first_failure);
  // Oracle: log q_n against (3 log n)^2 in double at the reported index.
  const double n = static_cast<double>(*r.first_failure);
  CHECK(4 * std::log(n) < std::pow(3 * std::log(n), 2));
}

TEST_CASE("sequence files round trip exactly") {
  const auto params = example_params(BigInt(4));
  auto seq = gen_pc(params, 40);
  const auto path = testing::scratch("pc.seq").string();
  write_sequence_file(path, seq.provenance(), seq.prefix(40));
  auto back = read_sequence_file(path);
  CHECK(copy(back.prefix(40)) == copy(seq.prefix(40)));
  CHECK(back.provenance().construction == seq.provenance().construction);
  CHECK(back.provenance().params == seq.provenance().params);
  CHECK_THROWS_AS(back.prefix(41), std::out_of_range);

  std::ofstream bad(testing::scratch("bad.seq"));
  bad << "# {\"construction\":\"x\"}\n5\n3\n";
  bad.close();
  CHECK_THROWS_AS(read_sequence_file(testing::scratch("bad.seq").string()), std::invalid_argument);
}

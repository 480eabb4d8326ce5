#include "doctest.h"

#include <set>
#include <vector>

#include "rdlab/parallel.hpp"
#include "rdlab/primes.hpp"
#include "rdlab/rng.hpp"

using namespace rdlab;

namespace {

bool trial_division(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("primality matches trial division") {
  for (unsigned long n = 0; n < 20000; ++n) CHECK(is_prime(BigInt(n)) == trial_division(n));
  // Carmichael numbers and strong pseudoprimes to small bases.
  for (const char* c : {"561", "41041", "3215031751", "3825123056546413051", "318665857834031151167461"}) {
    CHECK_FALSE(is_prime(BigInt(c)));
  }
  const auto r = primality(BigInt("1000000000000000000000000000057"));
  CHECK(r.prime);
  CHECK_FALSE(r.proven);
  CHECK(primality(BigInt("1000000007")).proven);
}

TEST_CASE("next_prime") {
  CHECK(next_prime(BigInt(14)) == 17);
  CHECK(next_prime(BigInt(17)) == 17);
  bool proven = false;
  CHECK(next_prime(BigInt(1000000), &proven) == 1000003);
  CHECK(proven);
}

TEST_CASE("streams are reproducible and keyed by all three parts") {
  Stream a(5, 7, 1), b(5, 7, 1), c(5, 8, 1), d(5, 7, 2);
  const auto va = a.next_u64();
  CHECK(va == b.next_u64());
  CHECK(va != c.next_u64());
  CHECK(va != d.next_u64());
}

TEST_CASE("bounded draws stay in range and cover it") {
  Stream s(1, 0, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = s.below(std::uint64_t{7});
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
  const BigInt bound("100000000000000000000000000");
  for (int i = 0; i < 200; ++i) {
    const BigInt v = s.below(bound);
    CHECK(v >= 0);
    CHECK(v < bound);
  }
  CHECK(mpz_sizeinbase(s.bits(300).get_mpz_t(), 2) <= 300);
}

TEST_CASE("parallel_for output is independent of the worker count") {
  auto run = [](unsigned threads) {
    std::vector<std::uint64_t> out(1000);
    parallel_for(out.size(), threads, [&](std::size_t i) { out[i] = Stream(9, i, 1).next_u64(); });
    return out;
  };
  const auto one = run(1);
  CHECK(one == run(4));
  CHECK(one == run(16));
  CHECK_THROWS_AS(parallel_for(100, 4, [](std::size_t i) {
                    if (i == 57) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

#include "rdlab/primes.hpp"

#include <array>

namespace rdlab {

namespace {

constexpr std::array<unsigned, 13> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool miller_rabin(const BigInt& n, unsigned base) {
  BigInt d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  BigInt x;
  BigInt a(base);
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const BigInt n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

BigInt deterministic_mr_limit() { return BigInt("3317044064679887385961981"); }

PrimalityResult primality(const BigInt& n) {
  if (n < 2) return {false, true};
  for (unsigned p : kBases) {
    if (n == p) return {true, true};
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return {false, true};
  }
  static const BigInt limit = deterministic_mr_limit();
  if (n < limit) {
    for (unsigned p : kBases) {
      if (!miller_rabin(n, p)) return {false, true};
    }
    return {true, true};
  }
  int verdict = mpz_probab_prime_p(n.get_mpz_t(), 40);
  return {verdict != 0, verdict != 1};
}

bool is_prime(const BigInt& n) { return primality(n).prime; }

BigInt next_prime(const BigInt& n, bool* proven) {
  bool all_proven = true;
  BigInt c = n < 2 ? BigInt(2) : n;
  for (;;) {
    auto r = primality(c);
    if (!r.proven) all_proven = false;
    if (r.prime) break;
    ++c;
  }
  if (proven) *proven = all_proven;
  return c;
}

}  // namespace rdlab

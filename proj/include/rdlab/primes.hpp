#pragma once

#include "rdlab/core.hpp"

namespace rdlab {

// Below this bound Miller-Rabin with the first thirteen prime bases
// (2..41) is a proof of primality.
BigInt deterministic_mr_limit();  // 3317044064679887385961981

struct PrimalityResult {
  bool prime = false;
  bool proven = false;  // false when the probabilistic fallback decided
};

PrimalityResult primality(const BigInt& n);
bool is_prime(const BigInt& n);

// Smallest prime >= n; `proven` reports whether every test on the way was
// deterministic.
BigInt next_prime(const BigInt& n, bool* proven = nullptr);

}  // namespace rdlab

#pragma once

#include <cstdint>
#include <random>

#include "rdlab/core.hpp"

namespace rdlab {

// Independent, reproducible random stream keyed by (seed, index, domain).
// Only raw engine output is consumed (never std::*_distribution), so the
// bits are identical across standard libraries.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index, std::uint32_t domain = 0);

  std::uint64_t next_u64() { return engine_(); }
  // Uniform integer in [0, bound), bound >= 1, by rejection.
  std::uint64_t below(std::uint64_t bound);
  // Uniform integer with the given number of random low bits.
  BigInt bits(unsigned count);
  // Uniform integer in [0, bound), bound >= 1, by rejection.
  BigInt below(const BigInt& bound);

 private:
  std::mt19937_64 engine_;
};

// Domain tags keep streams of different consumers apart.
namespace stream_domain {
inline constexpr std::uint32_t kSampler = 1;
inline constexpr std::uint32_t kSequenceChoice = 2;
inline constexpr std::uint32_t kFuzz = 3;
}  // namespace stream_domain

}  // namespace rdlab

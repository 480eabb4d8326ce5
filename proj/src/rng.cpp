#include "rdlab/rng.hpp"

#include <stdexcept>
#include <vector>

namespace rdlab {

Stream::Stream(std::uint64_t seed, std::uint64_t index, std::uint32_t domain) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), domain};
  engine_.seed(seq);
}

std::uint64_t Stream::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Stream::below: bound must be positive");
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  for (;;) {
    std::uint64_t v = engine_();
    if (v <= limit) return v % bound;
  }
}

BigInt Stream::bits(unsigned count) {
  const unsigned words = (count + 63) / 64;
  std::vector<std::uint64_t> buffer(words);
  for (auto& w : buffer) w = engine_();
  if (count % 64 != 0) buffer.back() &= (std::uint64_t{1} << (count % 64)) - 1;
  BigInt out;
  mpz_import(out.get_mpz_t(), buffer.size(), -1, sizeof(std::uint64_t), 0, 0, buffer.data());
  return out;
}

BigInt Stream::below(const BigInt& bound) {
  if (bound < 1) throw std::invalid_argument("Stream::below: bound must be positive");
  if (bound == 1) return BigInt(0);
  const unsigned count = static_cast<unsigned>(mpz_sizeinbase(BigInt(bound - 1).get_mpz_t(), 2));
  for (;;) {
    BigInt v = bits(count);
    if (v < bound) return v;
  }
}

}  // namespace rdlab

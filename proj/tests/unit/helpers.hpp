#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "rdlab/core.hpp"
#include "rdlab/rng.hpp"

namespace testing {

// Scratch directory for file round trips; created on first use.
inline std::filesystem::path scratch(const std::string& name) {
  const char* root = std::getenv("RDLAB_TEST_TMP");
  std::filesystem::path dir = root ? root : std::filesystem::temp_directory_path() / "rdlab_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

inline rdlab::Rational rational_below(rdlab::Stream& s, std::uint64_t num_max, std::uint64_t den_max) {
  const std::uint64_t den = 1 + s.below(den_max);
  const std::uint64_t num = s.below(num_max + 1);
  return rdlab::make_rational(rdlab::BigInt(std::to_string(num)), rdlab::BigInt(std::to_string(den)));
}

// a / b in lowest terms.
inline rdlab::Rational ratio(long a, long b) { return rdlab::make_rational(rdlab::BigInt(a), rdlab::BigInt(b)); }

}  // namespace testing

#pragma once

// Command-line front end: one binary, one subcommand per experiment.

#include <iosfwd>
#include <string>
#include <vector>

namespace rdlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;      // bad flags, config or inputs
inline constexpr int kExitCheckFailed = 3;  // an assertion failed under --check

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rdlab::cli

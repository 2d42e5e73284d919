#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wignerlab::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNumericalFailure = 1;
inline constexpr int kUsageError = 2;

/// Entry point of the `wignerlab` executable.
int run(int argc, char** argv);

/// Same, with the arguments (excluding the program name) and streams given
/// explicitly.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wignerlab::cli

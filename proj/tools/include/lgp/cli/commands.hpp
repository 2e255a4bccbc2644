#pragma once

#include <iosfwd>

namespace lgp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Parses arguments, runs one subcommand and maps errors to exit codes:
/// 0 success, 2 configuration or input error, 3 numerical failure.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lgp::cli

#pragma once

#include <iosfwd>

namespace hmvp::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNumerical = 2;

/// Parses the command line, runs the subcommand and writes its output.
/// Returns 0 on success, 1 on input errors, 2 on numerical failures or
/// failed checks.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hmvp::app

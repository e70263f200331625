#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hjale {

inline constexpr const char* kVersion = "0.1.0";

/// Runs one command line (program name excluded) and returns the exit code:
/// 0 success or feasible verdict, 1 failed metric verification, 2 malformed
/// input, 3 obstructed verdict, 4 construction not applicable.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hjale

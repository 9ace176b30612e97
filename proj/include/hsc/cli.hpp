#pragma once

#include <iosfwd>

namespace hsc::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;
inline constexpr int kResource = 3;

/// Full command-line entry point; all output goes to `out` / `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hsc::cli

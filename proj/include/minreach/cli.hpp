#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minreach::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitOracleInfeasible = 4;
inline constexpr int kExitVerificationFailed = 5;

// Runs the `minreach` command line. `args` excludes the program name. Reports
// go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace minreach::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fie23 {

/// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the `fie23` command line. `args` excludes the program name.
/// Subcommands: solve, convergence, compare, problems.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fie23

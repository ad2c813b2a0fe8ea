#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cluster_forge::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kInputError = 2, kInfeasible = 3 };

/// Runs one command line. `args` excludes the program name. Machine-readable
/// results go to `out` unless --out is given; progress and diagnostics go to
/// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cluster_forge::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cscheme::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kInvariantFailure = 1,
    kUsage = 2,
};

/// Runs one command line (args[0] is the program name). Artifacts go to --out
/// or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cscheme::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loopvir {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

/// Runs the loopvir command line on args (program name excluded).
/// Settings resolve as flags, then LOOPVIR_* environment variables, then the
/// --config file, then defaults.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loopvir

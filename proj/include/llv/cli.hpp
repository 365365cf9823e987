#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace llv {

/// Exit codes of the command-line tool.
enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace llv

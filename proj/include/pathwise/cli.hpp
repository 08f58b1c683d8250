#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pathwise {

/// Exit codes of the command-line runner.
enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitAssertFailed = 2 };

/// Runs one subcommand. args excludes the program name. JSON goes to out,
/// diagnostics to err, CSV to the --out file when given.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pathwise

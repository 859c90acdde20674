#pragma once

// The `writ` command-line front end.

#include <ostream>
#include <string>
#include <vector>

namespace writ {

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitUsage = 2, kExitFuel = 3 };

/// Runs `writ <args...>` writing results to out and diagnostics to err.
/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace writ

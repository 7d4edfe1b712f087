#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace solgeo {

/// Exit codes of the command-line interface.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2 };

/// Runs one command. `args` excludes the program name. Reports go to `out`;
/// usage errors and structured JSON failures go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace solgeo

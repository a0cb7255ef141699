#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperspectra {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes of run_cli.
enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitUsage = 2 };

// Runs the command line `args` (args[0] is the program name). Results go to
// `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperspectra

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lne {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitInput = 2,
    kExitInconclusive = 3,
    kExitCorpusMismatch = 4,
};

/// Runs one lnetool invocation; args[0] is the program name. Human output
/// goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lne

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ultradiff {

enum ExitStatus : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitUsage = 2,
    kExitPrecision = 3,
};

// Runs one ultradiff command; args excludes the program name. Data goes to
// out, diagnostics to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ultradiff

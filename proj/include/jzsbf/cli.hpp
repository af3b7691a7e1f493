#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jzsbf::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kDataError = 2,
    kNumericalError = 3,
};

// Runs one invocation. `args` excludes the program name. Reports go to `out`,
// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jzsbf::cli

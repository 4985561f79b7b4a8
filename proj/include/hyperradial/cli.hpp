#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperradial::cli {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kSuccess = 0,
    kInputError = 2,
    kIndeterminate = 3,
    kNoBoundState = 4,
    kConvergenceFailure = 5,
};

/// Runs the tool on `args` (without the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hyperradial::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace afc::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_guard = 3,
    exit_causality = 4,
    exit_all_rows_failed = 5,
    exit_oracle = 6,
};

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace afc::cli

#pragma once

// The thg command line: argument parsing, dispatch and report rendering.

#include <iosfwd>
#include <string>
#include <vector>

namespace thg::cli {

enum ExitCode : int { kOk = 0, kComputationError = 1, kUsageError = 2, kCheckFailed = 3 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thg::cli

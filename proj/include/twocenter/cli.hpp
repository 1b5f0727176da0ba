#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twocenter::cli {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs one command line (args exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twocenter::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mcss::cli {

enum ExitCode : int {
    kOk = 0,
    kMathFailure = 1,
    kParseError = 2,
    kUsageError = 3,
};

/// Runs one invocation. `args` excludes the program name; "-" as input file
/// reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace mcss::cli

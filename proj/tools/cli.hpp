#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bezierfit::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kFormat = 2,
    kNumeric = 3,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bezierfit::cli

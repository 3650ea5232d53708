#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace regmaps::cli {

enum ExitCode : int { kPass = 0, kFailure = 1, kUsage = 2 };

// JSON report on `out`, one-line summary on `err`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regmaps::cli

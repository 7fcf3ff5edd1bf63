#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bulkrobust::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kInfeasible = 2, kInvariant = 3, kUsage = 4 };

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bulkrobust::cli

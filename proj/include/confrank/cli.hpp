#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace confrank::cli {

enum ExitCode : int { kOk = 0, kContractError = 1, kIoError = 2 };

// Runs one invocation. `args` excludes the program name. Summaries go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace confrank::cli

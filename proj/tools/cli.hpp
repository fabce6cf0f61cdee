#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace boostlet::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

/// Entry point behind the `boostlet` binary. `args` excludes the program
/// name. Machine-readable output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace boostlet::cli

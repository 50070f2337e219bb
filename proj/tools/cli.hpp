#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coulomb::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kNoRoot = 2,
  kUsage = 64,
};

/// Runs the command line `args` (without the program name), writing results to
/// `out` unless --out is given and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coulomb::cli

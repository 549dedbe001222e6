#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sdft::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kMismatch = 3,
  kUnsupportedSize = 4,
  kVerificationFailed = 5,
};

/// Runs the `sdft` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdft::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace factorchoi::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kNegativeVerdict = 3,
  kInternalDisagreement = 4,
};

/// Runs one command. `args` excludes the program name. The result document
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace factorchoi::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dmm::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  ///< ran fine, but some bound or check did not hold
  kInputError = 2,
  kInfeasible = 3,
  kNumericFailure = 4,
};

/// Whole command line without the program name. Reports go to out, diagnostics
/// to err; nothing is written to out on an error path.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dmm::cli

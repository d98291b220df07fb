#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geoch::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kValidation = 2,
  kBlowup = 3,
  kDiffeoLoss = 4,
  kToleranceFailure = 5,
};

/// Runs one subcommand. args excludes the program name. Output root defaults
/// to $GEOCH_OUT_DIR, then the working directory.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geoch::cli

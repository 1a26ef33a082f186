#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bsrep {

/// Process exit codes of the bsirrep tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitInputError = 2,
  kExitOracleDisagreement = 3,
  kExitBudget = 4,
};

/// Runs the command line tool on args (program name excluded).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bsrep

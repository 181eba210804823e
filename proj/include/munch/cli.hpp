#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace munch {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitBudget = 3,
  kExitInvariant = 4,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace munch

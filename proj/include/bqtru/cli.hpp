#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bqtru {

/// Exit codes returned by run_cli besides 0 and CLI11's own parse codes.
enum ExitCode : int {
  kExitIo = 1,
  kExitRetries = 2,
  kExitDecryption = 3,
  kExitPayload = 4,
  kExitBudget = 5,
};

/// Runs one command line (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bqtru

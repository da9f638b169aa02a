#pragma once

#include <iosfwd>

namespace distplan::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 1,
  kUncoverable = 2,
  kSimulationMismatch = 3,
  kNotLocal = 4,
};

/// Entry point of the `distplan` tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace distplan::cli

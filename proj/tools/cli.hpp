#pragma once

#include <iosfwd>

namespace gsfrac::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kNumericFailure = 2,
  kInvariantViolation = 3,
};

/// Subcommands: simulate, sweep, steady, check-operators, bench.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gsfrac::cli

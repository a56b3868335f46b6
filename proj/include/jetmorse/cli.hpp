#pragma once

#include <iosfwd>

namespace jetmorse {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,
  kExitResource = 3,
  kExitNumerical = 4,
};

/// Entry point of the jetmorse command line. Normal output goes to `out`,
/// diagnostics to `err`; files are written only where --out is given.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jetmorse

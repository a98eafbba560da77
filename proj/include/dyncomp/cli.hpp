// Command-line front end. `run_cli` holds all command logic so tests can
// drive it in-process; tools/dyncomp.cpp only forwards argv.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dyncomp::cli {

enum ExitCode : int {
  kPass = 0,
  kMismatch = 1,
  kMalformed = 2,
};

/// Default MPFR precision when a command has no --precision: the
/// DYNCOMP_PRECISION environment variable, else `fallback`. Throws
/// std::invalid_argument on a malformed value.
long default_precision(long fallback);

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dyncomp::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nlpm::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kDataError = 3,
  kConsistencyError = 4,
};

/// Parses `args` (without the program name) and runs one subcommand:
/// simulate | fit | bounds | compare | bench.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlpm::cli

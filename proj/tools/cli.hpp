#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ucover::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInvalid = 2,
  kInfeasible = 3,
  kUsage = 64,
};

// Runs one subcommand. `args` excludes the program name. Results go to
// `out` (or --output), diagnostics to `err`; input comes from `in` unless
// --input is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace ucover::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topent::cli {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,
  kExitResource = 3,
  kExitAssertion = 4,
};

// Runs one invocation. `args` excludes the program name. Results go to `out`
// unless --out redirects them to a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topent::cli

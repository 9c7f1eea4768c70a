#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tracefn {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitAssertion = 3, kExitCapacity = 4 };

/// Runs the tracefn-lab command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tracefn

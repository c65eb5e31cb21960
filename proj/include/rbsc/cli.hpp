#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rbsc {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitYes = 0,
  kExitNo = 1,
  kExitUsage = 2,
  kExitCapacity = 3,
  kExitBound = 4,
};

// `args` excludes the program name. Standard input is read from `in` when an
// input path is "-".
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace rbsc

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scbench::cli {

/// Exit statuses shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  ///< runtime failure: unreadable input, empty reference, ...
  kUsage = 2,    ///< invalid or missing arguments
};

/// Runs `scbench <subcommand> [flags...]`; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scbench::cli

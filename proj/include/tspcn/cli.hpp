#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tspcn::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kUsageError = 2,
  kTimeLimited = 3,
  kValidationFailed = 4,
};

/// Runs the command line front end; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tspcn::cli

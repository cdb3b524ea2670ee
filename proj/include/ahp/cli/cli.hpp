#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace ahp::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kConsistencyFailure = 1,  // check / evaluate only
  kUsageError = 2,
  kFileError = 3,  // unreadable file or unparseable project
  kValidationError = 4,
};

/// Runs one command. `args` excludes the program name. Data goes to `out`,
/// diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ahp::cli

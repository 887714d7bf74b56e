#pragma once

#include <iosfwd>

namespace ldx::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kConvergence = 3,
  kUsage = 64,
};

/// Runs one `ldx` invocation. CSV goes to --out (or `out` when no path is
/// given); diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace ldx::cli

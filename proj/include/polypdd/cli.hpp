#pragma once

#include <iosfwd>

namespace polypdd::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsageError = 2,
  kDiagnosticError = 3,
};

/// Parses the command line and runs one job. Curves go to the output target
/// (stdout by default), messages to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polypdd::cli

#pragma once

#include <iosfwd>

namespace mla::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kShape = 3,
  kConvergence = 4,
};

// Parses argv, dispatches one verb and maps library errors onto exit codes.
// Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mla::cli

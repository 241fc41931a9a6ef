#pragma once

#include <iosfwd>

namespace shiftbeat {

/// Process exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitMissingFile = 3,
  kExitParse = 4,
  kExitInvalidWindow = 5,
  kExitIo = 6,
  kExitSizeLimit = 7,
};

/// Entry point of the `shiftbeat` tool. Reports go to `out`; warnings and the
/// single-line error record go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shiftbeat

#pragma once

#include <iosfwd>

namespace tritangle::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInputError = 2,
  kInapplicable = 3,
  kResourceLimit = 4,
};

/// Runs one command line; all output goes to `out` and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tritangle::cli

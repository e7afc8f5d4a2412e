#pragma once

#include <iosfwd>

namespace bpcr::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kInvariantViolation = 3,
};

// Entry point of the `bpcr` tool: fit, synth, scan, check.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bpcr::cli

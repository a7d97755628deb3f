#pragma once

#include <iosfwd>

namespace recsel::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3, kNumeric = 4 };

// Runs the recsel command line. Primary output goes to `out` unless --out is
// given; diagnostics and warnings go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace recsel::cli

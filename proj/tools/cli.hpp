#pragma once

#include <ostream>

namespace vfock::cli {

/// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;       // usage, parse or precondition failure
inline constexpr int kExitUnbounded = 2;   // deg g > A
inline constexpr int kExitVerifyFail = 3;  // a verify suite ran and did not pass

/// Entry point of the command-line tool. Reports go to `out` (or --out), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vfock::cli

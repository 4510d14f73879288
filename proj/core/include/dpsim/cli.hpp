#pragma once

namespace dpsim {

// Parses argv and dispatches one subcommand (metrics, sweep, simulate,
// verify, export-model). Returns the process exit code:
//   0  success
//   1  invariant failure or internal error
//   2  invalid flags or values
//   3  degenerate parameters where a command requires non-degenerate ones
//   4  output I/O failure
// Diagnostics go to the error stream; results go to --out or standard output.
int run_cli(int argc, const char* const* argv);

}  // namespace dpsim

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace onmf::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInput = 2,      ///< I/O, parse, shape or domain problems with input files
  kNumerical = 3,  ///< damping cap exhausted
};

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace onmf::cli

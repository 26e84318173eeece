#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sepcert {

inline constexpr const char* kToolName = "sepcert";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUnexpected = 1,
  kExitInput = 2,
  kExitSolver = 3,
  kExitRefuted = 4,
};

/// Runs the command line tool on args (program name excluded). The JSON
/// report goes to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sepcert

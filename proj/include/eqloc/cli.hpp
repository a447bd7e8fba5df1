#pragma once

// Command-line front end.  Exit status: 0 success, 1 mathematical failure
// (a check failed or a result left R(T)), 2 input error.

#include <ostream>
#include <string>
#include <vector>

namespace eqloc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMathFailure = 1;
inline constexpr int kExitInputError = 2;

/// Version of the structured (JSON) output layout.
inline constexpr int kStructuredFormatVersion = 1;

/// Runs one command; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqloc

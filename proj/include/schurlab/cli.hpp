#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schurlab {

inline constexpr const char* kTolEnvVar = "SCHURLAB_TOL";

/// args[0] is the program name. Writes one JSON report to out (or --output)
/// and a short human summary to err. Exit codes: 0 success, 1 negative answer
/// to a yes/no question, 2 input or precondition error, 3 precision not reached.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schurlab

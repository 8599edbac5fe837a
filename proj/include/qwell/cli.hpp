#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qwell {

/// Runs one CLI invocation (arguments without the program name) and writes
/// the report to out (or the --output file). Returns the process exit code:
/// 0 success, 2 argument or configuration error, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwell

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plsim::cli {

/// Runs the command line `args` (args[0] is the program name). Data goes to
/// `out` or the files named by --out/--json; progress and diagnostics go to
/// `err`. Returns the process exit code: 0 iff every output was written.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace plsim::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace monolab::cli {

/// Runs one command line (args[0] is the program name). Returns 0 on
/// success, 1 on a computation error and 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monolab::cli

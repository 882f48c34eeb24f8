#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace retnet::cli {

// Runs one subcommand. args excludes the program name.
// Exit status: 0 success, 1 domain error, 2 usage error.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace retnet::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vpf::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // a list failed to park, or a check failed
inline constexpr int kExitInputError = 2;

// Runs the command line `args` (without the program name). Never throws;
// always returns one of the exit codes above.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vpf::cli

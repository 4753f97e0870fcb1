#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace evote::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitClean = 0;
inline constexpr int kExitUsage = 1;      // bad arguments, unreadable or malformed input
inline constexpr int kExitIntegrity = 2;  // a detection event or board discrepancy
inline constexpr int kExitAuthenticity = 3;  // signature or ciphertext failed to verify

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evote::cli

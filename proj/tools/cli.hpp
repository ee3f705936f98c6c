#ifndef SHUFFLEKIT_TOOLS_CLI_HPP
#define SHUFFLEKIT_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace shufflekit::cli {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitBounded = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitResource = 4;

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shufflekit::cli

#endif

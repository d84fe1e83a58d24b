#ifndef MAPT_TOOLS_CLI_HPP
#define MAPT_TOOLS_CLI_HPP

#include <ostream>

namespace mapt::cli {

// Exit codes: 0 success (and --help), 1 usage, I/O or validation failure,
// 2 malformed data line.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBadData = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mapt::cli

#endif  // MAPT_TOOLS_CLI_HPP

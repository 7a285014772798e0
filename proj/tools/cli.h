#ifndef JAFRONT_TOOLS_CLI_H_
#define JAFRONT_TOOLS_CLI_H_

#include <iosfwd>

namespace jafront::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Entry point behind the jafront binary. `in` feeds commands that read text
// when no input path is configured.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace jafront::cli

#endif  // JAFRONT_TOOLS_CLI_H_

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitParameter = 4;

// Runs one `ffp` invocation; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ffp::cli

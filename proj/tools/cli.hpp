#pragma once

#include <iosfwd>

namespace cyber_egt::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConstraint = 3;
inline constexpr int kExitCompute = 4;
inline constexpr int kExitIo = 5;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cyber_egt::cli

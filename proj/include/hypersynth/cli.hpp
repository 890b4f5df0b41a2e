#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypersynth {

// Exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitMalformed = 2;
inline constexpr int kExitBounded = 3;
inline constexpr int kExitGuard = 4;

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypersynth

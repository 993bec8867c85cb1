#pragma once

#include <iosfwd>

namespace qeuclid {

// Exit codes: 0 when every requested check passes, 1 on a check failure, 2 on a usage error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qeuclid

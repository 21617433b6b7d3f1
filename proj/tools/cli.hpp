#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace logasm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerification = 3;

// Entry point shared by the executable and the tests. args[0] is the
// program name. CSV goes to `out` unless --out names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logasm::cli

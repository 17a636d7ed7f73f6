#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace radrobust::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;

// Runs the command line (args excludes the program name) and returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace radrobust::cli

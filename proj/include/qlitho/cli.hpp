// cli.hpp
// Command-line front end: kernel1d, kernel2d, expose, metrics, plates,
// counts and repro.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qlitho {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitUsageError = 2;

/// Runs one invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qlitho

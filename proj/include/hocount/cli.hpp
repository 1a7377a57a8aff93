#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hocount {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command-line front end. `args` excludes the program name.
/// Tabular results go to --out when given, otherwise to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hocount

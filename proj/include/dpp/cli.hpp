#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dpp::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 1;
inline constexpr int exit_mismatch = 2;

/// Runs the command line on `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dpp::cli

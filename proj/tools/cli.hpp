#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shotnoise::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_io = 1;
inline constexpr int exit_validation = 2;

/// Runs one command line (args excludes the program name). Data goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace shotnoise::cli

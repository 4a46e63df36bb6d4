#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ynls {

/// Exit codes of run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;  // I/O and other unexpected failures
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitUsage = 64;

/// Entry point of the `ynls` tool. args[0] is the program name.
/// Subcommands: gen-path, irregularity, solve, converge, verify-estimates, xnorm.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_command(int argc, const char* const* argv);

}  // namespace ynls

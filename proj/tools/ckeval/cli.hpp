#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace ckeval::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

/// Runs the command line given without the program name. Reports go to `out`
/// (or the --out file), diagnostics and usage text to `err`.
int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace ckeval::cli

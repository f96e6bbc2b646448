#pragma once

#include <string>

namespace ckeval {

/// Fixed-point rendering with `places` decimals, e.g. 9.094.
std::string format_fixed(double value, int places);

/// Shortest round-trip rendering: 5 -> "5", 1.409 -> "1.409".
std::string format_number(double value);

/// Parses a finite, non-negative decimal; returns false on any trailing junk.
bool parse_non_negative(std::string_view text, double& out);

} // namespace ckeval

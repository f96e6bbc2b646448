#include "ckeval/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string_view>

namespace ckeval {

std::string format_fixed(double value, int places) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, places);
    return std::string(buf.data(), res.ptr);
}

std::string format_number(double value) {
    if (value == 0.0) {
        return "0";  // also folds -0
    }
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
    if (res.ec != std::errc{}) {
        res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    }
    return std::string(buf.data(), res.ptr);
}

bool parse_non_negative(std::string_view text, double& out) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (text.empty() || text.front() == '-' || text.front() == '+') {
        return false;
    }
    auto res = std::from_chars(text.data(), text.data() + text.size(), out, std::chars_format::fixed);
    return res.ec == std::errc{} && res.ptr == text.data() + text.size() && std::isfinite(out);
}

} // namespace ckeval

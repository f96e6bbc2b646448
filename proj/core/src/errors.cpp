#include "ckeval/errors.hpp"

namespace ckeval {

std::string to_string(const Diagnostic& d) {
    std::string out = d.code;
    if (!d.location.empty()) {
        out += " at ";
        out += d.location;
    }
    if (!d.message.empty()) {
        out += ": ";
        out += d.message;
    }
    return out;
}

} // namespace ckeval

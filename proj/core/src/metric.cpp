#include "ckeval/metric.hpp"

#include <cctype>

namespace ckeval {

std::string_view metric_name(Metric m) noexcept {
    switch (m) {
    case Metric::WMC: return "WMC";
    case Metric::DIT: return "DIT";
    case Metric::NOC: return "NOC";
    case Metric::CBO: return "CBO";
    case Metric::RFC: return "RFC";
    case Metric::LCOM: return "LCOM";
    }
    return "?";
}

std::optional<Metric> parse_metric(std::string_view name) noexcept {
    for (Metric m : kAllMetrics) {
        std::string_view canonical = metric_name(m);
        if (canonical.size() != name.size()) {
            continue;
        }
        bool equal = true;
        for (std::size_t i = 0; i < name.size() && equal; ++i) {
            equal = std::toupper(static_cast<unsigned char>(name[i])) == canonical[i];
        }
        if (equal) {
            return m;
        }
    }
    return std::nullopt;
}

} // namespace ckeval

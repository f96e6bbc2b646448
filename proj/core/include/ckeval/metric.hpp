#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace ckeval {

/// The six C&K metrics, in report/column order.
enum class Metric { WMC, DIT, NOC, CBO, RFC, LCOM };

inline constexpr std::array<Metric, 6> kAllMetrics{Metric::WMC, Metric::DIT, Metric::NOC,
                                                   Metric::CBO, Metric::RFC, Metric::LCOM};

constexpr std::size_t index_of(Metric m) noexcept { return static_cast<std::size_t>(m); }

std::string_view metric_name(Metric m) noexcept;

/// Case-insensitive lookup of "WMC", "dit", ...
std::optional<Metric> parse_metric(std::string_view name) noexcept;

} // namespace ckeval

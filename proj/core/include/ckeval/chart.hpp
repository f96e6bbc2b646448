#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ckeval/metric.hpp"
#include "ckeval/versions.hpp"

namespace ckeval {

struct ChartSeries {
    Metric metric = Metric::WMC;
    std::vector<double> values;  // one per group
};

/// Grouped bar chart input: one group per version, one bar per series.
struct ChartSpec {
    std::string title;
    std::vector<std::string> groups;
    std::vector<ChartSeries> series;
    int width = 960;
    int height = 540;

    /// Series follow metric order regardless of the order of `metrics`.
    static ChartSpec from_versions(std::span<const VersionRecord> records,
                                   std::span<const Metric> metrics = kAllMetrics);
};

/// Fixed fill colour per metric.
std::string_view metric_color(Metric m) noexcept;

/// Top of the y axis: 1.1 x the largest value, or 1 when every value is 0.
double chart_axis_max(const ChartSpec& spec);

/// SVG 1.1 document. Throws InputError on zero groups, a series whose length
/// differs from the group count, or a negative/non-finite value.
std::string render_chart_svg(const ChartSpec& spec);

/// render_chart_svg written to `destination`. Throws OutputError if unwritable.
void emit_chart(const ChartSpec& spec, const std::filesystem::path& destination);

} // namespace ckeval

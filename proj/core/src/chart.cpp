#include "ckeval/chart.hpp"

#include <algorithm>
#include <cmath>

#include "ckeval/export.hpp"
#include "ckeval/format.hpp"

namespace ckeval {

ChartSpec ChartSpec::from_versions(std::span<const VersionRecord> records, std::span<const Metric> metrics) {
    ChartSpec spec;
    spec.title = "Metric means by version";
    for (const auto& r : records) {
        spec.groups.push_back(r.name);
    }
    for (Metric m : kAllMetrics) {
        if (std::find(metrics.begin(), metrics.end(), m) == metrics.end()) {
            continue;
        }
        ChartSeries s{m, {}};
        for (const auto& r : records) {
            s.values.push_back(r.means[m]);
        }
        spec.series.push_back(std::move(s));
    }
    return spec;
}

std::string_view metric_color(Metric m) noexcept {
    switch (m) {
    case Metric::WMC: return "#4e79a7";
    case Metric::DIT: return "#f28e2b";
    case Metric::NOC: return "#e15759";
    case Metric::CBO: return "#76b7b2";
    case Metric::RFC: return "#59a14f";
    case Metric::LCOM: return "#edc948";
    }
    return "#000000";
}

double chart_axis_max(const ChartSpec& spec) {
    double max = 0.0;
    for (const auto& s : spec.series) {
        for (double v : s.values) {
            max = std::max(max, v);
        }
    }
    return max > 0.0 ? 1.1 * max : 1.0;
}

namespace {

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    return format_fixed(v, 2);
}

void validate(const ChartSpec& spec) {
    if (spec.groups.empty()) {
        throw InputError("chart needs at least one group", {Diagnostic{"EMPTY_CHART", "", "zero groups"}});
    }
    if (spec.width <= 0 || spec.height <= 0) {
        throw InputError("chart dimensions must be positive");
    }
    for (const auto& s : spec.series) {
        if (s.values.size() != spec.groups.size()) {
            throw InputError("chart series " + std::string(metric_name(s.metric)) + " has " +
                             std::to_string(s.values.size()) + " values for " + std::to_string(spec.groups.size()) +
                             " groups");
        }
        for (double v : s.values) {
            if (!std::isfinite(v) || v < 0) {
                throw InputError("chart series " + std::string(metric_name(s.metric)) + " has a negative value");
            }
        }
    }
}

} // namespace

std::string render_chart_svg(const ChartSpec& spec) {
    validate(spec);

    const double width = spec.width;
    const double height = spec.height;
    const double left = 70;
    const double right = 150;  // legend column
    const double top = 50;
    const double bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    const double axis_max = chart_axis_max(spec);
    const double baseline = top + plot_h;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(spec.width) +
           "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
           std::to_string(spec.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "  <rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) + "\" fill=\"#ffffff\"/>\n";
    svg += "  <text x=\"" + num(width / 2) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" +
           xml_escape(spec.title) + "</text>\n";

    // Y axis with five ticks from 0 to axis_max.
    svg += "  <g class=\"y-axis\">\n";
    svg += "    <line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" + num(baseline) +
           "\" stroke=\"#333333\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double value = axis_max * k / 5.0;
        const double y = baseline - plot_h * k / 5.0;
        svg += "    <line x1=\"" + num(left - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left + plot_w) + "\" y2=\"" +
               num(y) + "\" stroke=\"#dddddd\"/>\n";
        svg += "    <text x=\"" + num(left - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + num(value) +
               "</text>\n";
    }
    svg += "  </g>\n";

    const std::size_t groups = spec.groups.size();
    const std::size_t series = std::max<std::size_t>(spec.series.size(), 1);
    const double group_w = plot_w / static_cast<double>(groups);
    const double bar_w = group_w * 0.8 / static_cast<double>(series);

    svg += "  <g class=\"bars\">\n";
    for (std::size_t g = 0; g < groups; ++g) {
        const double gx = left + group_w * static_cast<double>(g) + group_w * 0.1;
        for (std::size_t s = 0; s < spec.series.size(); ++s) {
            const auto& ser = spec.series[s];
            const double v = ser.values[g];
            const double h = plot_h * v / axis_max;
            const std::string metric(metric_name(ser.metric));
            svg += "    <rect class=\"bar\" data-group=\"" + xml_escape(spec.groups[g]) + "\" data-metric=\"" + metric +
                   "\" data-value=\"" + format_number(v) + "\" x=\"" + num(gx + bar_w * static_cast<double>(s)) +
                   "\" y=\"" + num(baseline - h) + "\" width=\"" + num(bar_w) + "\" height=\"" + num(h) +
                   "\" fill=\"" + std::string(metric_color(ser.metric)) + "\"><title>" + xml_escape(spec.groups[g]) +
                   " " + metric + ": " + format_number(v) + "</title></rect>\n";
        }
        svg += "    <text x=\"" + num(gx + group_w * 0.4) + "\" y=\"" + num(baseline + 20) +
               "\" text-anchor=\"middle\">" + xml_escape(spec.groups[g]) + "</text>\n";
    }
    svg += "  </g>\n";
    svg += "  <line x1=\"" + num(left) + "\" y1=\"" + num(baseline) + "\" x2=\"" + num(left + plot_w) + "\" y2=\"" +
           num(baseline) + "\" stroke=\"#333333\"/>\n";

    svg += "  <g class=\"legend\">\n";
    for (std::size_t s = 0; s < spec.series.size(); ++s) {
        const double y = top + 22.0 * static_cast<double>(s);
        const double x = left + plot_w + 20;
        svg += "    <rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"14\" height=\"14\" fill=\"" +
               std::string(metric_color(spec.series[s].metric)) + "\"/>\n";
        svg += "    <text x=\"" + num(x + 20) + "\" y=\"" + num(y + 12) + "\">" +
               std::string(metric_name(spec.series[s].metric)) + "</text>\n";
    }
    svg += "  </g>\n";
    svg += "</svg>\n";
    return svg;
}

void emit_chart(const ChartSpec& spec, const std::filesystem::path& destination) {
    write_output(destination, render_chart_svg(spec));
}

} // namespace ckeval

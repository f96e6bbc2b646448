#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ckeval/inference.hpp"
#include "ckeval/versions.hpp"

namespace ckeval {

enum class Locale { En, Tr };

std::optional<Locale> parse_locale(std::string_view text) noexcept;

/// Key-value line. Lines without a value render as the bare key.
struct ReportLine {
    std::string key;
    std::optional<std::string> value;

    bool operator==(const ReportLine&) const = default;
};

struct ReportSection {
    std::string heading;
    std::vector<ReportLine> lines;

    bool operator==(const ReportSection&) const = default;
};

struct Report {
    std::string title;
    std::vector<ReportSection> sections;
    Locale locale = Locale::En;

    bool operator==(const Report&) const = default;
};

/// Title line, then each section after a blank line: the heading uppercased
/// (locale-aware for Turkish dotted/dotless i), then one line per entry as
/// " key : value". Always ends in exactly one newline.
std::string render_text(const Report& report);

/// Locale-aware uppercase over UTF-8 (ASCII plus Turkish letters).
std::string to_upper(std::string_view text, Locale locale);

/// Localized label for a quality attribute; unregistered names pass through.
std::string attribute_label(std::string_view attribute, Locale locale);

/// Localized level text, with attribute-specific wording where the Turkish
/// reports use it (effort "Az"/"Çok", inheritance depth "İstenen Aralıkta").
std::string level_label(std::string_view attribute, Level level, Locale locale);

/// Versions joined the way the report lists ties.
enum class TieStyle { Conjunction, Space };
std::string join_versions(std::span<const std::string> names, Locale locale, TieStyle style);

Report make_comparison_report(std::span<const VersionVerdict> verdicts, Locale locale);
Report make_assessment_report(std::span<const Assessment> assessments, std::string_view rule_base, Locale locale);
Report make_filter_report(std::span<const RangePartition> partitions, Locale locale);

/// Auto-assigned version name prefix for the locale ("SÜRÜM" / "VERSION").
std::string_view version_prefix(Locale locale) noexcept;

} // namespace ckeval

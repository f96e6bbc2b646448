#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ckeval/metrics.hpp"

namespace ckeval {

struct VersionRecord {
    std::string name;
    std::string source_path;
    MetricMeans means;

    bool operator==(const VersionRecord&) const = default;
};

enum class Direction { HigherIsWorse, HigherIsBetter };

/// How a larger value of each metric reads. The default marks every metric,
/// NOC included, higher-is-worse.
struct DirectionTable {
    std::array<Direction, 6> directions{Direction::HigherIsWorse, Direction::HigherIsWorse,
                                        Direction::HigherIsWorse, Direction::HigherIsWorse,
                                        Direction::HigherIsWorse, Direction::HigherIsWorse};

    Direction operator[](Metric m) const noexcept { return directions[index_of(m)]; }
    Direction& operator[](Metric m) noexcept { return directions[index_of(m)]; }
};

struct VersionInterpretation {
    std::vector<std::string> quality_best;
    std::vector<std::string> quality_worst;
    std::vector<std::string> effort_most;
    std::vector<std::string> effort_least;

    bool operator==(const VersionInterpretation&) const = default;
};

struct VersionVerdict {
    Metric metric = Metric::WMC;
    Direction direction = Direction::HigherIsWorse;
    std::vector<std::string> min_versions;  // input order
    double min_value = 0.0;
    std::vector<std::string> max_versions;  // input order
    double max_value = 0.0;
    VersionInterpretation interpretation;

    bool operator==(const VersionVerdict&) const = default;
};

/// Exact min/max per selected metric with every tie reported. Values are
/// compared exactly as parsed. Throws InputError for fewer than two versions,
/// an empty selection, duplicate version names or negative means.
std::vector<VersionVerdict> compare_versions(std::span<const VersionRecord> records,
                                             std::span<const Metric> metrics = kAllMetrics,
                                             const DirectionTable& directions = {});

inline constexpr std::string_view kVersionTableFirstColumn = "VERSION";

/// One compare input: a metrics table, metrics document, class-model document
/// or a version means table (header VERSION,PATH,WMC,DIT,NOC,CBO,RFC,LCOM)
/// that expands to several records.
struct VersionInput {
    std::filesystem::path path;
    std::optional<std::string> name;
};

/// Records in input order. Unnamed versions are called "<prefix>-k" where k is
/// the 1-based position across all produced records.
std::vector<VersionRecord> load_versions(std::span<const VersionInput> inputs,
                                         std::string_view name_prefix = "VERSION");

/// Parses a version means table; empty VERSION cells stay empty for
/// load_versions to fill in.
std::vector<VersionRecord> parse_version_table(std::string_view text);
std::string write_version_table(std::span<const VersionRecord> records);
bool looks_like_version_table(std::string_view text);

} // namespace ckeval

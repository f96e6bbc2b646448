#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ckeval/inference.hpp"
#include "ckeval/metrics.hpp"
#include "ckeval/versions.hpp"

namespace ckeval {

inline constexpr int kExportSchemaVersion = 1;

struct InputProvenance {
    std::string path;
    std::string modified;  // UTC ISO-8601 of the file's last write, empty if unknown

    bool operator==(const InputProvenance&) const = default;
};

struct Provenance {
    std::string tool;
    std::vector<InputProvenance> inputs;

    bool operator==(const Provenance&) const = default;
};

/// Provenance entry for an existing file (modification time included).
InputProvenance describe_input(const std::filesystem::path& path);

Provenance make_provenance(const std::vector<std::filesystem::path>& inputs);

struct AnalysisResult {
    ProjectMetrics metrics;
    Provenance provenance;

    bool operator==(const AnalysisResult&) const = default;
};

struct EvaluationResult {
    std::string rule_base;
    EvaluationScope scope = EvaluationScope::Class;
    std::vector<Assessment> assessments;
    Provenance provenance;

    bool operator==(const EvaluationResult&) const = default;
};

struct FilterResult {
    std::vector<RangePartition> partitions;
    Provenance provenance;

    bool operator==(const FilterResult&) const = default;
};

struct ComparisonResult {
    std::vector<VersionRecord> versions;
    std::vector<VersionVerdict> verdicts;
    Provenance provenance;

    bool operator==(const ComparisonResult&) const = default;
};

using Results = std::variant<AnalysisResult, EvaluationResult, FilterResult, ComparisonResult>;

/// Lossless JSON form. Output is a pure function of the value, so
/// export(import(export(x))) == export(x) byte for byte.
std::string export_structured(const Results& results);

/// Inverse of export_structured. Throws InputError on malformed documents.
Results import_structured(std::string_view document);

/// Writes `content` to `path` (parent directories must exist). Throws OutputError.
void write_output(const std::filesystem::path& path, std::string_view content);

} // namespace ckeval

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ckeval/metrics.hpp"

namespace ckeval {

inline constexpr std::string_view kMetricsTableHeader = "CLASS,WMC,DIT,NOC,CBO,RFC,LCOM";
inline constexpr int kMetricsDocumentSchemaVersion = 1;

/// Parses the delimited metrics table. Lines starting with '#' and blank lines
/// are ignored; the first remaining line must be the header. Values must be
/// non-negative integers.
ProjectMetrics parse_metrics_table(std::string_view text, std::string project_name = {});

/// Header plus one row per class, in record order.
std::string write_metrics_table(const ProjectMetrics& pm);

/// Structured (JSON) equivalent of the table, carrying the means as well.
ProjectMetrics parse_metrics_document(std::string_view text);
std::string write_metrics_document(const ProjectMetrics& pm);

/// Loads any accepted per-class source: metrics table, metrics document or
/// class-model document (reduced through compute_all). The project name
/// defaults to the file stem when the input does not carry one.
ProjectMetrics load_project_metrics(const std::filesystem::path& path);
ProjectMetrics load_project_metrics_text(std::string_view text, const std::string& default_name);

} // namespace ckeval

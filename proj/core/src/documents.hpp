#pragma once

// JSON builders shared between the per-module document writers and the
// structured export, so both emit identical fragments.

#include "ckeval/metrics.hpp"
#include "json_util.hpp"

namespace ckeval::detail {

Json means_to_json(const MetricMeans& means);
MetricMeans means_from_json(const Json& j, const std::string& path);

Json metrics_to_json(const ProjectMetrics& pm);
ProjectMetrics metrics_from_json(const Json& j, const std::string& path);

} // namespace ckeval::detail

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ckeval/metric.hpp"
#include "ckeval/model.hpp"

namespace ckeval {

struct MetricRecord {
    std::string class_name;
    std::uint32_t wmc = 0;
    std::uint32_t dit = 0;
    std::uint32_t noc = 0;
    std::uint32_t cbo = 0;
    std::uint32_t rfc = 0;
    std::uint32_t lcom = 0;

    std::uint32_t value(Metric m) const noexcept;
    void set(Metric m, std::uint32_t v) noexcept;

    bool operator==(const MetricRecord&) const = default;
};

/// Six real-valued values indexed by Metric (per-class means, version means).
struct MetricMeans {
    std::array<double, 6> values{};

    double operator[](Metric m) const noexcept { return values[index_of(m)]; }
    double& operator[](Metric m) noexcept { return values[index_of(m)]; }

    bool operator==(const MetricMeans&) const = default;
};

struct ProjectMetrics {
    std::string project_name;
    std::vector<MetricRecord> per_class;
    MetricMeans means;

    /// Builds the aggregate, deriving arithmetic means (all zero when empty).
    static ProjectMetrics from_records(std::string project_name, std::vector<MetricRecord> records);

    bool operator==(const ProjectMetrics&) const = default;
};

/// Per-method complexity used by WMC. Unit complexity makes WMC a method count.
using MethodComplexity = std::function<std::uint32_t(const MethodInfo&)>;

std::uint32_t unit_complexity(const MethodInfo&);

std::uint32_t wmc(const ClassInfo& c, const MethodComplexity& complexity = unit_complexity);

/// Extends edges from `c` up to its root; edges into external stubs do not count.
std::uint32_t dit(const ClassInfo& c, const ClassModel& model);

/// Direct subclasses of `c` declared in the model.
std::uint32_t noc(const ClassInfo& c, const ClassModel& model);

/// Distinct non-external classes coupled to `c` in either direction through
/// method calls or member access, excluding `c` itself, its ancestors and its
/// descendants. Unresolved call targets never couple.
std::uint32_t cbo(const ClassInfo& c, const ClassModel& model);

/// Size of the response set: declared methods plus distinct methods they call
/// directly, identified by (class or unresolved sentinel, name, arity).
std::uint32_t rfc(const ClassInfo& c);

/// max(P - Q, 0) over unordered method pairs, where P counts pairs with
/// disjoint instance-field usage and Q counts pairs sharing a field.
/// Static fields are not instance variables and are ignored.
std::uint32_t lcom(const ClassInfo& c);

/// One record per non-external class, sorted by qualified name, plus means.
ProjectMetrics compute_all(const ClassModel& model,
                           const MethodComplexity& complexity = unit_complexity);

} // namespace ckeval

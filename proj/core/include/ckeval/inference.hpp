#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ckeval/metrics.hpp"
#include "ckeval/rules.hpp"

namespace ckeval {

inline constexpr std::string_view kProjectScope = "project";

/// A metric observation for one scope (class name or "project").
struct Fact {
    Metric metric = Metric::WMC;
    double value = 0.0;
    std::string scope;

    bool operator==(const Fact&) const = default;
};

/// An (attribute, level) assertion and the rule that made it.
struct DerivedFact {
    std::string attribute;
    Level level = Level::Normal;
    std::string rule_id;

    bool operator==(const DerivedFact&) const = default;
};

struct Assessment {
    std::string scope;
    std::vector<Fact> facts;              // inputs, in evaluation order
    std::vector<std::string> fired_rules; // in firing order
    std::vector<DerivedFact> trace;       // every assertion, in firing order
    std::vector<DerivedFact> derived;     // one per attribute, last writer wins, first-assertion order

    const DerivedFact* find(std::string_view attribute) const noexcept;

    bool operator==(const Assessment&) const = default;
};

/// Forward chaining over metric facts. Facts are taken in input order; each
/// fires the (at most one) rule of its metric whose condition admits it.
/// Derived attribute facts are terminal: no rule conditions on attributes.
/// One Assessment per scope, in order of the scope's first fact.
/// Throws InputError on a negative or non-finite fact value.
std::vector<Assessment> forward_chain(std::span<const Fact> facts, const KnowledgeBase& kb);

enum class EvaluationScope { Class, Project };

/// Round half up, used to map real-valued means onto integer bands.
std::int64_t round_half_up(double value) noexcept;

/// Class scope: six facts per record in metric order. Project scope: the six
/// means rounded half up, under scope "project".
std::vector<Assessment> evaluate_project(const ProjectMetrics& pm, const KnowledgeBase& kb,
                                         EvaluationScope scope);

using RangeSelection = std::map<Metric, Condition>;

struct ClassValue {
    std::string class_name;
    std::uint32_t value = 0;

    bool operator==(const ClassValue&) const = default;
};

struct RangePartition {
    Metric metric = Metric::WMC;
    Condition condition;
    std::vector<ClassValue> in_range;
    std::vector<ClassValue> out_of_range;

    bool operator==(const RangePartition&) const = default;
};

/// Splits classes by each selected metric's condition, in metric order.
/// Class order follows the ProjectMetrics records. Throws InputError if the
/// selection is empty.
std::vector<RangePartition> filter_by_ranges(const ProjectMetrics& pm, const RangeSelection& selection);

} // namespace ckeval

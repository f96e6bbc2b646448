#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ckeval/metric.hpp"

namespace ckeval {

/// Qualitative level of a quality attribute, totally ordered.
enum class Level { VeryLow, Low, Normal, High, VeryHigh };

std::string_view level_name(Level l) noexcept;
std::optional<Level> parse_level(std::string_view name) noexcept;

/// Closed integer interval [lo, hi]; `hi` empty means unbounded above.
struct Interval {
    std::int64_t lo = 0;
    std::optional<std::int64_t> hi;

    bool operator==(const Interval&) const = default;
};

/// Explicit, sorted, duplicate-free set of admissible values.
struct ValueSet {
    std::vector<std::int64_t> values;

    bool operator==(const ValueSet&) const = default;
};

/// Antecedent of a rule, or a user range selection.
class Condition {
public:
    Condition() = default;
    static Condition interval(std::int64_t lo, std::optional<std::int64_t> hi);
    static Condition values(std::vector<std::int64_t> values);

    /// Parses "2-5", "26-", "0,1,2" or "7". Throws InputError otherwise.
    static Condition parse(std::string_view text);

    bool matches(double value) const noexcept;

    /// Smallest integer satisfying both conditions, if any.
    std::optional<std::int64_t> first_common_value(const Condition& other) const;

    bool is_interval() const noexcept { return std::holds_alternative<Interval>(repr_); }
    const Interval* as_interval() const noexcept { return std::get_if<Interval>(&repr_); }
    const ValueSet* as_values() const noexcept { return std::get_if<ValueSet>(&repr_); }

    /// Display form used in reports: "2 - 5", "26 -", "0, 1, 2".
    std::string display() const;
    /// Compact form accepted by parse(): "2-5", "26-", "0,1,2".
    std::string compact() const;

    bool operator==(const Condition&) const = default;

private:
    std::variant<Interval, ValueSet> repr_{Interval{}};
};

struct Conclusion {
    std::string attribute;
    Level level = Level::Normal;

    bool operator==(const Conclusion&) const = default;
};

struct Rule {
    std::string id;
    Metric metric = Metric::WMC;
    std::string band;  // optional label such as "VeryLow" or "AboveNormal"
    Condition condition;
    std::vector<Conclusion> conclusions;

    bool operator==(const Rule&) const = default;
};

/// Attribute names rules may conclude about. Documents can register extras.
const std::vector<std::string>& builtin_attributes();

/// Validated rule collection: unique ids, and within one metric no integer
/// value satisfies two conditions.
class KnowledgeBase {
public:
    KnowledgeBase() = default;

    /// Throws InputError when any invariant fails (overlaps name both rule ids
    /// and the first shared value).
    KnowledgeBase(std::string name, std::vector<Rule> rules, std::vector<std::string> extra_attributes = {},
                  std::string description = {});

    const std::string& name() const noexcept { return name_; }
    const std::string& description() const noexcept { return description_; }
    const std::vector<Rule>& rules() const noexcept { return rules_; }
    const std::vector<std::string>& extra_attributes() const noexcept { return extra_attributes_; }
    std::size_t size() const noexcept { return rules_.size(); }

    /// The unique rule of `metric` whose condition admits `value`.
    const Rule* match(Metric metric, double value) const noexcept;
    const Rule* find(std::string_view id) const noexcept;

    /// Smallest non-negative integer of `metric` no rule admits.
    std::optional<std::int64_t> first_uncovered(Metric metric) const;

    /// True when every metric's conditions cover all non-negative integers.
    bool is_complete() const;

    /// Same content regardless of rule storage order.
    bool equivalent(const KnowledgeBase& other) const;

private:
    std::string name_;
    std::string description_;
    std::vector<Rule> rules_;
    std::vector<std::string> extra_attributes_;
};

inline constexpr int kRulesSchemaVersion = 1;

/// Parses a rules document. Throws InputError on schema errors, overlaps,
/// unknown attributes or an empty base. `name` overrides the document name.
KnowledgeBase load_rules(std::string_view document, std::string_view name = {});

std::string serialize_rules(const KnowledgeBase& kb);

/// Built-in 42-rule base (6 metrics x 7 bands), parsed from the shipped
/// default rules document.
const KnowledgeBase& default_rule_base();

/// The three worked rules (DIT=5, WMC=18, CBO=1) encoded verbatim.
const KnowledgeBase& paper_rule_preset();

/// "default", "paper", or a path to a rules document.
KnowledgeBase load_rule_base(std::string_view name_or_path);

/// Raw text of the shipped documents.
std::string_view default_rules_document() noexcept;
std::string_view paper_rules_document() noexcept;

} // namespace ckeval

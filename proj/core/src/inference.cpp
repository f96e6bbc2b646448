#include "ckeval/inference.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

namespace ckeval {

const DerivedFact* Assessment::find(std::string_view attribute) const noexcept {
    auto it = std::find_if(derived.begin(), derived.end(),
                           [&](const DerivedFact& d) { return d.attribute == attribute; });
    return it == derived.end() ? nullptr : &*it;
}

namespace {

Assessment& assessment_for(std::vector<Assessment>& out, std::map<std::string_view, std::size_t>& index,
                           const std::string& scope) {
    auto [it, inserted] = index.emplace(scope, out.size());
    if (inserted) {
        out.push_back(Assessment{scope, {}, {}, {}, {}});
    }
    return out[it->second];
}

void assert_conclusion(Assessment& a, const Conclusion& c, const std::string& rule_id) {
    DerivedFact fact{c.attribute, c.level, rule_id};
    a.trace.push_back(fact);
    auto it = std::find_if(a.derived.begin(), a.derived.end(),
                           [&](const DerivedFact& d) { return d.attribute == c.attribute; });
    if (it == a.derived.end()) {
        a.derived.push_back(std::move(fact));
    } else {
        *it = std::move(fact);  // last writer wins; the trace keeps the earlier value
    }
}

} // namespace

std::vector<Assessment> forward_chain(std::span<const Fact> facts, const KnowledgeBase& kb) {
    for (const auto& f : facts) {
        if (!std::isfinite(f.value) || f.value < 0) {
            throw InputError("fact " + std::string(metric_name(f.metric)) + " for '" + f.scope +
                                 "' has invalid value " + std::to_string(f.value),
                             {Diagnostic{"NEGATIVE_FACT", f.scope, std::string(metric_name(f.metric))}});
        }
    }

    // Agenda-driven loop. Only metric facts enter the agenda: rule antecedents
    // are metric conditions, so asserted attribute facts cannot trigger further
    // rules and chaining terminates after one step per fact.
    std::vector<Assessment> out;
    std::map<std::string_view, std::size_t> index;  // keys view the facts' scope strings
    std::deque<const Fact*> agenda;
    for (const auto& f : facts) {
        agenda.push_back(&f);
    }
    while (!agenda.empty()) {
        const Fact& fact = *agenda.front();
        agenda.pop_front();
        Assessment& a = assessment_for(out, index, fact.scope);
        a.facts.push_back(fact);
        const Rule* rule = kb.match(fact.metric, fact.value);
        if (rule == nullptr) {
            continue;
        }
        a.fired_rules.push_back(rule->id);
        for (const auto& c : rule->conclusions) {
            assert_conclusion(a, c, rule->id);
        }
    }
    return out;
}

std::int64_t round_half_up(double value) noexcept {
    return static_cast<std::int64_t>(std::floor(value + 0.5));
}

std::vector<Assessment> evaluate_project(const ProjectMetrics& pm, const KnowledgeBase& kb, EvaluationScope scope) {
    std::vector<Fact> facts;
    if (scope == EvaluationScope::Project) {
        for (Metric m : kAllMetrics) {
            facts.push_back(Fact{m, static_cast<double>(round_half_up(pm.means[m])), std::string(kProjectScope)});
        }
        return forward_chain(facts, kb);
    }

    // Scopes are class names; evaluate each record separately so duplicate
    // class names in an imported table still yield one assessment per row.
    std::vector<Assessment> out;
    out.reserve(pm.per_class.size());
    for (const auto& r : pm.per_class) {
        facts.clear();
        for (Metric m : kAllMetrics) {
            facts.push_back(Fact{m, static_cast<double>(r.value(m)), r.class_name});
        }
        auto result = forward_chain(facts, kb);
        out.push_back(std::move(result.front()));
    }
    return out;
}

std::vector<RangePartition> filter_by_ranges(const ProjectMetrics& pm, const RangeSelection& selection) {
    if (selection.empty()) {
        throw InputError("range selection is empty: select at least one metric",
                         {Diagnostic{"EMPTY_SELECTION", "", "no metric selected"}});
    }
    std::vector<RangePartition> out;
    for (const auto& [metric, condition] : selection) {
        RangePartition part{metric, condition, {}, {}};
        for (const auto& r : pm.per_class) {
            ClassValue cv{r.class_name, r.value(metric)};
            (condition.matches(cv.value) ? part.in_range : part.out_of_range).push_back(std::move(cv));
        }
        out.push_back(std::move(part));
    }
    return out;
}

} // namespace ckeval

#include "ckeval/metrics.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace ckeval {

std::uint32_t MetricRecord::value(Metric m) const noexcept {
    switch (m) {
    case Metric::WMC: return wmc;
    case Metric::DIT: return dit;
    case Metric::NOC: return noc;
    case Metric::CBO: return cbo;
    case Metric::RFC: return rfc;
    case Metric::LCOM: return lcom;
    }
    return 0;
}

void MetricRecord::set(Metric m, std::uint32_t v) noexcept {
    switch (m) {
    case Metric::WMC: wmc = v; break;
    case Metric::DIT: dit = v; break;
    case Metric::NOC: noc = v; break;
    case Metric::CBO: cbo = v; break;
    case Metric::RFC: rfc = v; break;
    case Metric::LCOM: lcom = v; break;
    }
}

ProjectMetrics ProjectMetrics::from_records(std::string project_name, std::vector<MetricRecord> records) {
    ProjectMetrics pm;
    pm.project_name = std::move(project_name);
    pm.per_class = std::move(records);
    if (!pm.per_class.empty()) {
        for (Metric m : kAllMetrics) {
            double sum = 0.0;
            for (const auto& r : pm.per_class) {
                sum += r.value(m);
            }
            pm.means[m] = sum / static_cast<double>(pm.per_class.size());
        }
    }
    return pm;
}

std::uint32_t unit_complexity(const MethodInfo&) {
    return 1;
}

std::uint32_t wmc(const ClassInfo& c, const MethodComplexity& complexity) {
    std::uint32_t total = 0;
    for (const auto& m : c.methods) {
        total += complexity(m);
    }
    return total;
}

std::uint32_t dit(const ClassInfo& c, const ClassModel& model) {
    std::uint32_t depth = 0;
    for (const ClassInfo* p = model.in_model_parent(c); p != nullptr; p = model.in_model_parent(*p)) {
        ++depth;
        if (depth > model.size()) {
            break;  // cyclic input; validated models never get here
        }
    }
    return depth;
}

std::uint32_t noc(const ClassInfo& c, const ClassModel& model) {
    std::uint32_t children = 0;
    for (const auto& other : model.classes()) {
        if (!other.is_external && &other != &c && model.in_model_parent(other) == &c) {
            ++children;
        }
    }
    return children;
}

namespace {

/// Classes `c` couples to through its own method bodies.
std::unordered_set<const ClassInfo*> outgoing_couplings(const ClassInfo& c, const ClassModel& model) {
    std::unordered_set<const ClassInfo*> out;
    auto consider = [&](std::string_view name) {
        const ClassInfo* target = model.find(name);
        if (target != nullptr && target != &c && !target->is_external) {
            out.insert(target);
        }
    };
    for (const auto& m : c.methods) {
        for (const auto& call : m.called_methods) {
            if (call.resolved()) {
                consider(call.target_class);
            }
        }
        for (const auto& ref : m.referenced_classes) {
            consider(ref);
        }
    }
    return out;
}

std::uint32_t count_unrelated(const ClassInfo& c, const std::unordered_set<const ClassInfo*>& coupled,
                              const ClassModel& model) {
    std::uint32_t n = 0;
    for (const ClassInfo* d : coupled) {
        if (!model.is_ancestor(*d, c) && !model.is_ancestor(c, *d)) {
            ++n;
        }
    }
    return n;
}

} // namespace

std::uint32_t cbo(const ClassInfo& c, const ClassModel& model) {
    if (c.is_external) {
        return 0;
    }
    auto coupled = outgoing_couplings(c, model);
    for (const auto& other : model.classes()) {
        if (&other == &c || other.is_external) {
            continue;
        }
        if (outgoing_couplings(other, model).contains(&c)) {
            coupled.insert(&other);
        }
    }
    return count_unrelated(c, coupled, model);
}

std::uint32_t rfc(const ClassInfo& c) {
    std::set<MethodRef> response;
    for (const auto& m : c.methods) {
        response.insert(MethodRef{c.qualified_name, m.name, m.arity});
    }
    for (const auto& m : c.methods) {
        response.insert(m.called_methods.begin(), m.called_methods.end());
    }
    return static_cast<std::uint32_t>(response.size());
}

std::uint32_t lcom(const ClassInfo& c) {
    std::vector<std::vector<std::string_view>> usage;
    usage.reserve(c.methods.size());
    for (const auto& m : c.methods) {
        std::vector<std::string_view> instance_fields;
        for (const auto& name : m.used_fields) {
            const FieldInfo* f = c.find_field(name);
            if (f == nullptr || !f->is_static) {
                instance_fields.push_back(name);  // used_fields is a std::set, so this stays sorted
            }
        }
        usage.push_back(std::move(instance_fields));
    }

    auto intersects = [](const std::vector<std::string_view>& a, const std::vector<std::string_view>& b) {
        auto ia = a.begin();
        auto ib = b.begin();
        while (ia != a.end() && ib != b.end()) {
            if (*ia == *ib) {
                return true;
            }
            *ia < *ib ? ++ia : ++ib;
        }
        return false;
    };

    long long disjoint = 0;
    long long sharing = 0;
    for (std::size_t i = 0; i < usage.size(); ++i) {
        for (std::size_t j = i + 1; j < usage.size(); ++j) {
            intersects(usage[i], usage[j]) ? ++sharing : ++disjoint;
        }
    }
    return static_cast<std::uint32_t>(std::max(disjoint - sharing, 0LL));
}

ProjectMetrics compute_all(const ClassModel& model, const MethodComplexity& complexity) {
    // Coupling is gathered once for the whole model; the per-class cbo()
    // would rescan every class for incoming references.
    std::unordered_map<const ClassInfo*, std::unordered_set<const ClassInfo*>> coupled;
    std::unordered_map<const ClassInfo*, std::uint32_t> children;
    for (const auto& c : model.classes()) {
        if (c.is_external) {
            continue;
        }
        coupled[&c];
        for (const ClassInfo* d : outgoing_couplings(c, model)) {
            coupled[&c].insert(d);
            coupled[d].insert(&c);
        }
        if (const ClassInfo* parent = model.in_model_parent(c)) {
            ++children[parent];
        }
    }

    std::vector<MetricRecord> records;
    for (const auto& c : model.classes()) {
        if (c.is_external) {
            continue;
        }
        MetricRecord r;
        r.class_name = c.qualified_name;
        r.wmc = wmc(c, complexity);
        r.dit = dit(c, model);
        r.noc = children[&c];
        r.cbo = count_unrelated(c, coupled[&c], model);
        r.rfc = rfc(c);
        r.lcom = lcom(c);
        records.push_back(std::move(r));
    }
    std::sort(records.begin(), records.end(),
              [](const MetricRecord& a, const MetricRecord& b) { return a.class_name < b.class_name; });
    return ProjectMetrics::from_records(model.project_name(), std::move(records));
}

} // namespace ckeval

#include "ckeval/rules.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json_util.hpp"

namespace ckeval {

using detail::Json;
using detail::child;

std::string_view level_name(Level l) noexcept {
    switch (l) {
    case Level::VeryLow: return "VeryLow";
    case Level::Low: return "Low";
    case Level::Normal: return "Normal";
    case Level::High: return "High";
    case Level::VeryHigh: return "VeryHigh";
    }
    return "?";
}

std::optional<Level> parse_level(std::string_view name) noexcept {
    for (Level l : {Level::VeryLow, Level::Low, Level::Normal, Level::High, Level::VeryHigh}) {
        if (level_name(l) == name) {
            return l;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Condition

Condition Condition::interval(std::int64_t lo, std::optional<std::int64_t> hi) {
    Condition c;
    c.repr_ = Interval{lo, hi};
    return c;
}

Condition Condition::values(std::vector<std::int64_t> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    Condition c;
    c.repr_ = ValueSet{std::move(values)};
    return c;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

std::int64_t parse_bound(std::string_view text, std::string_view whole) {
    text = trim(text);
    std::int64_t v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size() || v < 0) {
        throw InputError("invalid range '" + std::string(whole) +
                         "': expected non-negative integers as 'lo-hi', 'lo-' or 'v1,v2,...'");
    }
    return v;
}

} // namespace

Condition Condition::parse(std::string_view text) {
    const std::string_view whole = text;
    text = trim(text);
    if (text.find(',') != std::string_view::npos) {
        std::vector<std::int64_t> vals;
        std::size_t start = 0;
        while (true) {
            std::size_t pos = text.find(',', start);
            vals.push_back(parse_bound(text.substr(start, pos == std::string_view::npos ? pos : pos - start), whole));
            if (pos == std::string_view::npos) {
                break;
            }
            start = pos + 1;
        }
        return values(std::move(vals));
    }
    if (auto dash = text.find('-'); dash != std::string_view::npos) {
        std::int64_t lo = parse_bound(text.substr(0, dash), whole);
        std::string_view rest = trim(text.substr(dash + 1));
        if (rest.empty()) {
            return interval(lo, std::nullopt);
        }
        std::int64_t hi = parse_bound(rest, whole);
        if (hi < lo) {
            throw InputError("invalid range '" + std::string(whole) + "': lower bound exceeds upper bound");
        }
        return interval(lo, hi);
    }
    return values({parse_bound(text, whole)});
}

bool Condition::matches(double value) const noexcept {
    if (const auto* iv = as_interval()) {
        return value >= static_cast<double>(iv->lo) && (!iv->hi || value <= static_cast<double>(*iv->hi));
    }
    const auto& vals = as_values()->values;
    return std::any_of(vals.begin(), vals.end(), [&](std::int64_t v) { return static_cast<double>(v) == value; });
}

std::optional<std::int64_t> Condition::first_common_value(const Condition& other) const {
    const auto* a = as_interval();
    const auto* b = other.as_interval();
    if (a != nullptr && b != nullptr) {
        std::int64_t lo = std::max(a->lo, b->lo);
        std::optional<std::int64_t> hi;
        if (a->hi && b->hi) {
            hi = std::min(*a->hi, *b->hi);
        } else if (a->hi) {
            hi = a->hi;
        } else if (b->hi) {
            hi = b->hi;
        }
        if (!hi || lo <= *hi) {
            return lo;
        }
        return std::nullopt;
    }
    const Condition& set_side = a == nullptr ? *this : other;
    const Condition& other_side = a == nullptr ? other : *this;
    for (std::int64_t v : set_side.as_values()->values) {  // sorted ascending
        if (other_side.matches(static_cast<double>(v))) {
            return v;
        }
    }
    return std::nullopt;
}

std::string Condition::display() const {
    if (const auto* iv = as_interval()) {
        return std::to_string(iv->lo) + " -" + (iv->hi ? " " + std::to_string(*iv->hi) : std::string());
    }
    std::string out;
    for (std::int64_t v : as_values()->values) {
        out += out.empty() ? std::to_string(v) : ", " + std::to_string(v);
    }
    return out;
}

std::string Condition::compact() const {
    if (const auto* iv = as_interval()) {
        return std::to_string(iv->lo) + "-" + (iv->hi ? std::to_string(*iv->hi) : std::string());
    }
    std::string out;
    for (std::int64_t v : as_values()->values) {
        out += out.empty() ? std::to_string(v) : "," + std::to_string(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// KnowledgeBase

const std::vector<std::string>& builtin_attributes() {
    static const std::vector<std::string> attributes{
        "complexity", "understandability", "testability",   "reusability",
        "robustness", "faultLikelihood",   "maintenanceEffort", "quality",
        "coupling",   "modularDesign",     "inheritanceDepth",  "methodCount"};
    return attributes;
}

KnowledgeBase::KnowledgeBase(std::string name, std::vector<Rule> rules, std::vector<std::string> extra_attributes,
                             std::string description)
    : name_(std::move(name)),
      description_(std::move(description)),
      rules_(std::move(rules)),
      extra_attributes_(std::move(extra_attributes)) {
    if (rules_.empty()) {
        throw InputError("knowledge base '" + name_ + "' has no rules", {Diagnostic{"EMPTY_BASE", name_, "no rules"}});
    }
    std::set<std::string, std::less<>> vocabulary(builtin_attributes().begin(), builtin_attributes().end());
    vocabulary.insert(extra_attributes_.begin(), extra_attributes_.end());

    std::set<std::string, std::less<>> ids;
    for (const auto& r : rules_) {
        if (r.id.empty()) {
            throw InputError("rule with empty id", {Diagnostic{"EMPTY_ID", name_, "rule id is empty"}});
        }
        if (!ids.insert(r.id).second) {
            throw InputError("duplicate rule id '" + r.id + "'", {Diagnostic{"DUPLICATE_RULE", r.id, "id repeated"}});
        }
        if (const auto* iv = r.condition.as_interval()) {
            if (iv->lo < 0 || (iv->hi && *iv->hi < iv->lo)) {
                throw InputError("rule '" + r.id + "': range must satisfy 0 <= lo <= hi",
                                 {Diagnostic{"BAD_RANGE", r.id, r.condition.compact()}});
            }
        } else {
            const auto& vals = r.condition.as_values()->values;
            if (vals.empty() || vals.front() < 0) {
                throw InputError("rule '" + r.id + "': value set must be non-empty and non-negative",
                                 {Diagnostic{"BAD_VALUES", r.id, r.condition.compact()}});
            }
        }
        if (r.conclusions.empty()) {
            throw InputError("rule '" + r.id + "' has no conclusions", {Diagnostic{"NO_CONCLUSIONS", r.id, ""}});
        }
        for (const auto& c : r.conclusions) {
            if (!vocabulary.contains(c.attribute)) {
                throw InputError("rule '" + r.id + "': attribute '" + c.attribute + "' is not registered",
                                 {Diagnostic{"UNKNOWN_ATTRIBUTE", r.id, c.attribute}});
            }
        }
    }
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        for (std::size_t j = i + 1; j < rules_.size(); ++j) {
            if (rules_[i].metric != rules_[j].metric) {
                continue;
            }
            if (auto v = rules_[i].condition.first_common_value(rules_[j].condition)) {
                throw InputError("rules '" + rules_[i].id + "' and '" + rules_[j].id + "' overlap at " +
                                     std::string(metric_name(rules_[i].metric)) + " value " + std::to_string(*v),
                                 {Diagnostic{"RULE_OVERLAP", rules_[i].id + "," + rules_[j].id,
                                             "both admit value " + std::to_string(*v)}});
            }
        }
    }
}

const Rule* KnowledgeBase::match(Metric metric, double value) const noexcept {
    for (const auto& r : rules_) {
        if (r.metric == metric && r.condition.matches(value)) {
            return &r;  // disjointness makes the first match the only one
        }
    }
    return nullptr;
}

const Rule* KnowledgeBase::find(std::string_view id) const noexcept {
    auto it = std::find_if(rules_.begin(), rules_.end(), [&](const Rule& r) { return r.id == id; });
    return it == rules_.end() ? nullptr : &*it;
}

std::optional<std::int64_t> KnowledgeBase::first_uncovered(Metric metric) const {
    std::vector<std::pair<std::int64_t, std::optional<std::int64_t>>> spans;
    for (const auto& r : rules_) {
        if (r.metric != metric) {
            continue;
        }
        if (const auto* iv = r.condition.as_interval()) {
            spans.emplace_back(iv->lo, iv->hi);
        } else {
            for (std::int64_t v : r.condition.as_values()->values) {
                spans.emplace_back(v, v);
            }
        }
    }
    std::sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::int64_t next = 0;
    for (const auto& [lo, hi] : spans) {
        if (lo > next) {
            return next;
        }
        if (!hi) {
            return std::nullopt;
        }
        next = std::max(next, *hi + 1);
    }
    return next;
}

bool KnowledgeBase::is_complete() const {
    return std::all_of(kAllMetrics.begin(), kAllMetrics.end(),
                       [&](Metric m) { return !first_uncovered(m).has_value(); });
}

bool KnowledgeBase::equivalent(const KnowledgeBase& other) const {
    if (name_ != other.name_ || rules_.size() != other.rules_.size()) {
        return false;
    }
    auto sorted = [](std::vector<Rule> rules) {
        std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) { return a.id < b.id; });
        return rules;
    };
    auto attrs = [](std::vector<std::string> a) {
        std::sort(a.begin(), a.end());
        return a;
    };
    return sorted(rules_) == sorted(other.rules_) && attrs(extra_attributes_) == attrs(other.extra_attributes_);
}

// ---------------------------------------------------------------------------
// Documents

KnowledgeBase load_rules(std::string_view document, std::string_view name) {
    const Json root = detail::parse_json(document, "rules document");
    detail::expect_object(root, "");
    detail::expect_keys(root, "", {"schemaVersion", "name", "description", "attributes", "rules"});
    detail::expect_schema_version(root, kRulesSchemaVersion);

    std::string kb_name(name);
    if (kb_name.empty()) {
        if (const Json* n = detail::find_key(root, "name")) {
            kb_name = detail::as_string(*n, "/name");
        }
    }
    std::string description;
    if (const Json* d = detail::find_key(root, "description")) {
        description = detail::as_string(*d, "/description");
    }
    std::vector<std::string> extra;
    if (const Json* a = detail::find_key(root, "attributes")) {
        detail::expect_array(*a, "/attributes");
        for (std::size_t i = 0; i < a->size(); ++i) {
            extra.push_back(detail::as_string((*a)[i], child("/attributes", i)));
        }
    }

    const Json& rules_json = detail::expect_array(detail::require_key(root, "rules", ""), "/rules");
    std::vector<Rule> rules;
    for (std::size_t i = 0; i < rules_json.size(); ++i) {
        const std::string path = child("/rules", i);
        const Json& rj = detail::expect_object(rules_json[i], path);
        detail::expect_keys(rj, path, {"id", "metric", "band", "range", "values", "conclusions"});
        Rule r;
        r.id = detail::as_string(detail::require_key(rj, "id", path), child(path, "id"));
        const std::string metric_text = detail::as_string(detail::require_key(rj, "metric", path), child(path, "metric"));
        auto metric = parse_metric(metric_text);
        if (!metric) {
            detail::schema_error(child(path, "metric"), "unknown metric '" + metric_text + "'");
        }
        r.metric = *metric;
        if (const Json* b = detail::find_key(rj, "band")) {
            r.band = detail::as_string(*b, child(path, "band"));
        }

        const Json* range = detail::find_key(rj, "range");
        const Json* values = detail::find_key(rj, "values");
        if ((range == nullptr) == (values == nullptr)) {
            detail::schema_error(path, "exactly one of \"range\" or \"values\" is required");
        }
        if (range != nullptr) {
            const std::string rp = child(path, "range");
            detail::expect_array(*range, rp);
            if (range->size() != 2) {
                detail::schema_error(rp, "expected [lo, hi] with hi null for unbounded");
            }
            std::int64_t lo = detail::as_integer((*range)[0], child(rp, 0));
            std::optional<std::int64_t> hi;
            if (!(*range)[1].is_null()) {
                hi = detail::as_integer((*range)[1], child(rp, 1));
            }
            if (lo < 0 || (hi && *hi < lo)) {
                detail::schema_error(rp, "range must satisfy 0 <= lo <= hi");
            }
            r.condition = Condition::interval(lo, hi);
        } else {
            const std::string vp = child(path, "values");
            detail::expect_array(*values, vp);
            if (values->empty()) {
                detail::schema_error(vp, "value set must be non-empty");
            }
            std::vector<std::int64_t> vals;
            for (std::size_t k = 0; k < values->size(); ++k) {
                std::int64_t v = detail::as_integer((*values)[k], child(vp, k));
                if (v < 0) {
                    detail::schema_error(child(vp, k), "values must be non-negative");
                }
                vals.push_back(v);
            }
            r.condition = Condition::values(std::move(vals));
        }

        const std::string cp = child(path, "conclusions");
        const Json& concl = detail::expect_array(detail::require_key(rj, "conclusions", path), cp);
        for (std::size_t k = 0; k < concl.size(); ++k) {
            const std::string p = child(cp, k);
            const Json& cj = detail::expect_object(concl[k], p);
            detail::expect_keys(cj, p, {"attribute", "level"});
            Conclusion c;
            c.attribute = detail::as_string(detail::require_key(cj, "attribute", p), child(p, "attribute"));
            const std::string level_text = detail::as_string(detail::require_key(cj, "level", p), child(p, "level"));
            auto level = parse_level(level_text);
            if (!level) {
                detail::schema_error(child(p, "level"), "unknown level '" + level_text + "'");
            }
            c.level = *level;
            r.conclusions.push_back(std::move(c));
        }
        rules.push_back(std::move(r));
    }
    return KnowledgeBase(std::move(kb_name), std::move(rules), std::move(extra), std::move(description));
}

std::string serialize_rules(const KnowledgeBase& kb) {
    Json root = Json::object();
    root["schemaVersion"] = kRulesSchemaVersion;
    root["name"] = kb.name();
    if (!kb.description().empty()) {
        root["description"] = kb.description();
    }
    if (!kb.extra_attributes().empty()) {
        root["attributes"] = kb.extra_attributes();
    }
    Json rules = Json::array();
    for (const auto& r : kb.rules()) {
        Json rj = Json::object();
        rj["id"] = r.id;
        rj["metric"] = metric_name(r.metric);
        if (!r.band.empty()) {
            rj["band"] = r.band;
        }
        if (const auto* iv = r.condition.as_interval()) {
            rj["range"] = Json::array({iv->lo, iv->hi ? Json(*iv->hi) : Json(nullptr)});
        } else {
            rj["values"] = r.condition.as_values()->values;
        }
        Json concl = Json::array();
        for (const auto& c : r.conclusions) {
            concl.push_back(Json{{"attribute", c.attribute}, {"level", level_name(c.level)}});
        }
        rj["conclusions"] = std::move(concl);
        rules.push_back(std::move(rj));
    }
    root["rules"] = std::move(rules);
    return detail::dump(root);
}

const KnowledgeBase& default_rule_base() {
    static const KnowledgeBase kb = load_rules(default_rules_document());
    return kb;
}

const KnowledgeBase& paper_rule_preset() {
    static const KnowledgeBase kb = load_rules(paper_rules_document());
    return kb;
}

KnowledgeBase load_rule_base(std::string_view name_or_path) {
    if (name_or_path == "default") {
        return default_rule_base();
    }
    if (name_or_path == "paper") {
        return paper_rule_preset();
    }
    const std::filesystem::path path{std::string(name_or_path)};
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read rules file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_rules(buf.str());
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what(), e.diagnostics());
    }
}

} // namespace ckeval

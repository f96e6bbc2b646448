#include "ckeval/export.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "ckeval/version.hpp"
#include "documents.hpp"

namespace ckeval {

using detail::Json;
using detail::child;

InputProvenance describe_input(const std::filesystem::path& path) {
    InputProvenance p{path.generic_string(), {}};
    std::error_code ec;
    auto ftime = std::filesystem::last_write_time(path, ec);
    if (ec) {
        return p;
    }
    auto sys = std::chrono::file_clock::to_sys(ftime);
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::time_point_cast<std::chrono::seconds>(sys));
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    p.modified = buf;
    return p;
}

Provenance make_provenance(const std::vector<std::filesystem::path>& inputs) {
    Provenance p;
    p.tool = std::string("ckeval ") + std::string(kVersionString);
    for (const auto& path : inputs) {
        p.inputs.push_back(describe_input(path));
    }
    return p;
}

namespace {

Json provenance_to_json(const Provenance& p) {
    Json inputs = Json::array();
    for (const auto& in : p.inputs) {
        inputs.push_back(Json{{"path", in.path}, {"modified", in.modified}});
    }
    return Json{{"tool", p.tool}, {"inputs", std::move(inputs)}};
}

Provenance provenance_from_json(const Json& j, const std::string& path) {
    detail::expect_object(j, path);
    detail::expect_keys(j, path, {"tool", "inputs"});
    Provenance p;
    p.tool = detail::as_string(detail::require_key(j, "tool", path), child(path, "tool"));
    const std::string ip = child(path, "inputs");
    const Json& inputs = detail::expect_array(detail::require_key(j, "inputs", path), ip);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const std::string p2 = child(ip, i);
        detail::expect_object(inputs[i], p2);
        detail::expect_keys(inputs[i], p2, {"path", "modified"});
        p.inputs.push_back(InputProvenance{
            detail::as_string(detail::require_key(inputs[i], "path", p2), child(p2, "path")),
            detail::as_string(detail::require_key(inputs[i], "modified", p2), child(p2, "modified"))});
    }
    return p;
}

Json strings_to_json(const std::vector<std::string>& v) {
    return Json(v);
}

std::vector<std::string> strings_from_json(const Json& j, const std::string& path) {
    detail::expect_array(j, path);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(detail::as_string(j[i], child(path, i)));
    }
    return out;
}

Metric metric_from_json(const Json& j, const std::string& path) {
    auto m = parse_metric(detail::as_string(j, path));
    if (!m) {
        detail::schema_error(path, "unknown metric");
    }
    return *m;
}

Json derived_to_json(const DerivedFact& d) {
    return Json{{"attribute", d.attribute}, {"level", level_name(d.level)}, {"rule", d.rule_id}};
}

DerivedFact derived_from_json(const Json& j, const std::string& path) {
    detail::expect_object(j, path);
    detail::expect_keys(j, path, {"attribute", "level", "rule"});
    DerivedFact d;
    d.attribute = detail::as_string(detail::require_key(j, "attribute", path), child(path, "attribute"));
    auto level = parse_level(detail::as_string(detail::require_key(j, "level", path), child(path, "level")));
    if (!level) {
        detail::schema_error(child(path, "level"), "unknown level");
    }
    d.level = *level;
    d.rule_id = detail::as_string(detail::require_key(j, "rule", path), child(path, "rule"));
    return d;
}

Json header(std::string_view kind) {
    Json root = Json::object();
    root["schemaVersion"] = kExportSchemaVersion;
    root["kind"] = kind;
    return root;
}

Json to_json(const AnalysisResult& r) {
    Json root = detail::metrics_to_json(r.metrics);
    root["provenance"] = provenance_to_json(r.provenance);
    return root;
}

Json to_json(const EvaluationResult& r) {
    Json root = header("evaluation");
    root["ruleBase"] = r.rule_base;
    root["scope"] = r.scope == EvaluationScope::Class ? "class" : "project";
    Json list = Json::array();
    for (const auto& a : r.assessments) {
        Json aj = Json::object();
        aj["scope"] = a.scope;
        Json facts = Json::array();
        for (const auto& f : a.facts) {
            facts.push_back(Json{{"metric", metric_name(f.metric)}, {"value", f.value}});
        }
        aj["facts"] = std::move(facts);
        aj["firedRules"] = strings_to_json(a.fired_rules);
        Json conclusions = Json::array();
        for (const auto& d : a.derived) {
            conclusions.push_back(derived_to_json(d));
        }
        aj["conclusions"] = std::move(conclusions);
        Json trace = Json::array();
        for (const auto& d : a.trace) {
            trace.push_back(derived_to_json(d));
        }
        aj["trace"] = std::move(trace);
        list.push_back(std::move(aj));
    }
    root["assessments"] = std::move(list);
    root["provenance"] = provenance_to_json(r.provenance);
    return root;
}

Json class_values_to_json(const std::vector<ClassValue>& values) {
    Json out = Json::array();
    for (const auto& cv : values) {
        out.push_back(Json{{"class", cv.class_name}, {"value", cv.value}});
    }
    return out;
}

std::vector<ClassValue> class_values_from_json(const Json& j, const std::string& path) {
    detail::expect_array(j, path);
    std::vector<ClassValue> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = child(path, i);
        detail::expect_object(j[i], p);
        detail::expect_keys(j[i], p, {"class", "value"});
        long long v = detail::as_integer(detail::require_key(j[i], "value", p), child(p, "value"));
        if (v < 0) {
            detail::schema_error(child(p, "value"), "negative metric value");
        }
        out.push_back(ClassValue{detail::as_string(detail::require_key(j[i], "class", p), child(p, "class")),
                                 static_cast<std::uint32_t>(v)});
    }
    return out;
}

Json to_json(const FilterResult& r) {
    Json root = header("filter");
    Json parts = Json::array();
    for (const auto& p : r.partitions) {
        parts.push_back(Json{{"metric", metric_name(p.metric)},
                             {"condition", p.condition.compact()},
                             {"inRange", class_values_to_json(p.in_range)},
                             {"outOfRange", class_values_to_json(p.out_of_range)}});
    }
    root["partitions"] = std::move(parts);
    root["provenance"] = provenance_to_json(r.provenance);
    return root;
}

Json to_json(const ComparisonResult& r) {
    Json root = header("comparison");
    Json versions = Json::array();
    for (const auto& v : r.versions) {
        versions.push_back(Json{{"name", v.name}, {"path", v.source_path}, {"means", detail::means_to_json(v.means)}});
    }
    root["versions"] = std::move(versions);
    Json verdicts = Json::array();
    for (const auto& v : r.verdicts) {
        const auto& in = v.interpretation;
        verdicts.push_back(Json{
            {"metric", metric_name(v.metric)},
            {"direction", v.direction == Direction::HigherIsWorse ? "higherIsWorse" : "higherIsBetter"},
            {"min", Json{{"value", v.min_value}, {"versions", strings_to_json(v.min_versions)}}},
            {"max", Json{{"value", v.max_value}, {"versions", strings_to_json(v.max_versions)}}},
            {"interpretation", Json{{"qualityBest", strings_to_json(in.quality_best)},
                                    {"qualityWorst", strings_to_json(in.quality_worst)},
                                    {"effortMost", strings_to_json(in.effort_most)},
                                    {"effortLeast", strings_to_json(in.effort_least)}}}});
    }
    root["verdicts"] = std::move(verdicts);
    root["provenance"] = provenance_to_json(r.provenance);
    return root;
}

EvaluationResult evaluation_from_json(const Json& root) {
    detail::expect_keys(root, "", {"schemaVersion", "kind", "ruleBase", "scope", "assessments", "provenance"});
    EvaluationResult r;
    r.rule_base = detail::as_string(detail::require_key(root, "ruleBase", ""), "/ruleBase");
    const std::string scope = detail::as_string(detail::require_key(root, "scope", ""), "/scope");
    if (scope != "class" && scope != "project") {
        detail::schema_error("/scope", "expected \"class\" or \"project\"");
    }
    r.scope = scope == "class" ? EvaluationScope::Class : EvaluationScope::Project;
    const Json& list = detail::expect_array(detail::require_key(root, "assessments", ""), "/assessments");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string p = child("/assessments", i);
        const Json& aj = detail::expect_object(list[i], p);
        detail::expect_keys(aj, p, {"scope", "facts", "firedRules", "conclusions", "trace"});
        Assessment a;
        a.scope = detail::as_string(detail::require_key(aj, "scope", p), child(p, "scope"));
        const std::string fp = child(p, "facts");
        const Json& facts = detail::expect_array(detail::require_key(aj, "facts", p), fp);
        for (std::size_t k = 0; k < facts.size(); ++k) {
            const std::string q = child(fp, k);
            detail::expect_object(facts[k], q);
            detail::expect_keys(facts[k], q, {"metric", "value"});
            a.facts.push_back(Fact{metric_from_json(detail::require_key(facts[k], "metric", q), child(q, "metric")),
                                   detail::as_number(detail::require_key(facts[k], "value", q), child(q, "value")),
                                   a.scope});
        }
        a.fired_rules = strings_from_json(detail::require_key(aj, "firedRules", p), child(p, "firedRules"));
        for (const char* key : {"conclusions", "trace"}) {
            const std::string cp = child(p, key);
            const Json& arr = detail::expect_array(detail::require_key(aj, key, p), cp);
            auto& target = std::string_view(key) == "trace" ? a.trace : a.derived;
            for (std::size_t k = 0; k < arr.size(); ++k) {
                target.push_back(derived_from_json(arr[k], child(cp, k)));
            }
        }
        r.assessments.push_back(std::move(a));
    }
    r.provenance = provenance_from_json(detail::require_key(root, "provenance", ""), "/provenance");
    return r;
}

FilterResult filter_from_json(const Json& root) {
    detail::expect_keys(root, "", {"schemaVersion", "kind", "partitions", "provenance"});
    FilterResult r;
    const Json& parts = detail::expect_array(detail::require_key(root, "partitions", ""), "/partitions");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const std::string p = child("/partitions", i);
        const Json& pj = detail::expect_object(parts[i], p);
        detail::expect_keys(pj, p, {"metric", "condition", "inRange", "outOfRange"});
        RangePartition part;
        part.metric = metric_from_json(detail::require_key(pj, "metric", p), child(p, "metric"));
        part.condition = Condition::parse(detail::as_string(detail::require_key(pj, "condition", p), child(p, "condition")));
        part.in_range = class_values_from_json(detail::require_key(pj, "inRange", p), child(p, "inRange"));
        part.out_of_range = class_values_from_json(detail::require_key(pj, "outOfRange", p), child(p, "outOfRange"));
        r.partitions.push_back(std::move(part));
    }
    r.provenance = provenance_from_json(detail::require_key(root, "provenance", ""), "/provenance");
    return r;
}

ComparisonResult comparison_from_json(const Json& root) {
    detail::expect_keys(root, "", {"schemaVersion", "kind", "versions", "verdicts", "provenance"});
    ComparisonResult r;
    const Json& versions = detail::expect_array(detail::require_key(root, "versions", ""), "/versions");
    for (std::size_t i = 0; i < versions.size(); ++i) {
        const std::string p = child("/versions", i);
        const Json& vj = detail::expect_object(versions[i], p);
        detail::expect_keys(vj, p, {"name", "path", "means"});
        r.versions.push_back(VersionRecord{detail::as_string(detail::require_key(vj, "name", p), child(p, "name")),
                                           detail::as_string(detail::require_key(vj, "path", p), child(p, "path")),
                                           detail::means_from_json(detail::require_key(vj, "means", p), child(p, "means"))});
    }
    const Json& verdicts = detail::expect_array(detail::require_key(root, "verdicts", ""), "/verdicts");
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        const std::string p = child("/verdicts", i);
        const Json& vj = detail::expect_object(verdicts[i], p);
        detail::expect_keys(vj, p, {"metric", "direction", "min", "max", "interpretation"});
        VersionVerdict v;
        v.metric = metric_from_json(detail::require_key(vj, "metric", p), child(p, "metric"));
        const std::string dir = detail::as_string(detail::require_key(vj, "direction", p), child(p, "direction"));
        if (dir != "higherIsWorse" && dir != "higherIsBetter") {
            detail::schema_error(child(p, "direction"), "unknown direction");
        }
        v.direction = dir == "higherIsWorse" ? Direction::HigherIsWorse : Direction::HigherIsBetter;
        for (const char* key : {"min", "max"}) {
            const std::string q = child(p, key);
            const Json& ej = detail::expect_object(detail::require_key(vj, key, p), q);
            detail::expect_keys(ej, q, {"value", "versions"});
            double value = detail::as_number(detail::require_key(ej, "value", q), child(q, "value"));
            auto names = strings_from_json(detail::require_key(ej, "versions", q), child(q, "versions"));
            if (std::string_view(key) == "min") {
                v.min_value = value;
                v.min_versions = std::move(names);
            } else {
                v.max_value = value;
                v.max_versions = std::move(names);
            }
        }
        const std::string ip = child(p, "interpretation");
        const Json& ij = detail::expect_object(detail::require_key(vj, "interpretation", p), ip);
        detail::expect_keys(ij, ip, {"qualityBest", "qualityWorst", "effortMost", "effortLeast"});
        v.interpretation.quality_best = strings_from_json(detail::require_key(ij, "qualityBest", ip), child(ip, "qualityBest"));
        v.interpretation.quality_worst = strings_from_json(detail::require_key(ij, "qualityWorst", ip), child(ip, "qualityWorst"));
        v.interpretation.effort_most = strings_from_json(detail::require_key(ij, "effortMost", ip), child(ip, "effortMost"));
        v.interpretation.effort_least = strings_from_json(detail::require_key(ij, "effortLeast", ip), child(ip, "effortLeast"));
        r.verdicts.push_back(std::move(v));
    }
    r.provenance = provenance_from_json(detail::require_key(root, "provenance", ""), "/provenance");
    return r;
}

} // namespace

std::string export_structured(const Results& results) {
    return std::visit([](const auto& r) { return detail::dump(to_json(r)); }, results);
}

Results import_structured(std::string_view document) {
    const Json root = detail::parse_json(document, "export document");
    detail::expect_object(root, "");
    detail::expect_schema_version(root, kExportSchemaVersion);
    const std::string kind = detail::as_string(detail::require_key(root, "kind", ""), "/kind");
    if (kind == "metrics") {
        detail::expect_keys(root, "", {"schemaVersion", "kind", "project", "classes", "means", "provenance"});
        AnalysisResult r;
        r.metrics = detail::metrics_from_json(root, "");
        if (const Json* p = detail::find_key(root, "provenance")) {
            r.provenance = provenance_from_json(*p, "/provenance");
        }
        return r;
    }
    if (kind == "evaluation") {
        return evaluation_from_json(root);
    }
    if (kind == "filter") {
        return filter_from_json(root);
    }
    if (kind == "comparison") {
        return comparison_from_json(root);
    }
    detail::schema_error("/kind", "unknown export kind '" + kind + "'");
}

void write_output(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw OutputError("cannot write '" + path.string() + "'");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
        throw OutputError("failed while writing '" + path.string() + "'");
    }
}

} // namespace ckeval

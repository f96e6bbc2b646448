#include "ckeval/metrics_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "ckeval/format.hpp"
#include "ckeval/model_io.hpp"
#include "documents.hpp"

namespace ckeval {

using detail::Json;
using detail::child;

namespace {

std::vector<std::string> split(std::string_view line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delim, start);
        std::string_view cell = line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
            cell.remove_prefix(1);
        }
        while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) {
            cell.remove_suffix(1);
        }
        out.emplace_back(cell);
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::toupper(static_cast<unsigned char>(a[i])) != std::toupper(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

std::string_view strip_bom(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) {
        text.remove_prefix(3);
    }
    return text;
}

} // namespace

ProjectMetrics parse_metrics_table(std::string_view text, std::string project_name) {
    text = strip_bom(text);
    std::vector<MetricRecord> records;
    bool have_header = false;
    char delim = ',';
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        std::string_view trimmed = line;
        while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t')) {
            trimmed.remove_prefix(1);
        }
        while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' ')) {
            trimmed.remove_suffix(1);
        }
        if (trimmed.empty() || trimmed.front() == '#') {
            continue;
        }
        const std::string where = "line " + std::to_string(line_no);

        if (!have_header) {
            delim = (trimmed.find(',') == std::string_view::npos && trimmed.find('\t') != std::string_view::npos) ? '\t' : ',';
            auto cols = split(trimmed, delim);
            bool ok = cols.size() == 7 && (iequals(cols[0], "CLASS") || iequals(cols[0], "SINIFLAR"));
            for (std::size_t i = 1; ok && i < 7; ++i) {
                ok = iequals(cols[i], metric_name(kAllMetrics[i - 1]));
            }
            if (!ok) {
                throw InputError("metrics table " + where + ": expected header '" + std::string(kMetricsTableHeader) + "'",
                                 {Diagnostic{"BAD_HEADER", where, std::string(trimmed)}});
            }
            have_header = true;
            continue;
        }

        auto cols = split(trimmed, delim);
        if (cols.size() != 7) {
            throw InputError("metrics table " + where + ": expected 7 columns, found " + std::to_string(cols.size()),
                             {Diagnostic{"BAD_ROW", where, "wrong column count"}});
        }
        if (cols[0].empty()) {
            throw InputError("metrics table " + where + ": empty class name",
                             {Diagnostic{"BAD_ROW", where, "empty class name"}});
        }
        MetricRecord r;
        r.class_name = cols[0];
        for (std::size_t i = 1; i < 7; ++i) {
            double v = 0;
            if (!parse_non_negative(cols[i], v) || v != static_cast<double>(static_cast<std::uint32_t>(v))) {
                throw InputError("metrics table " + where + ": " + std::string(metric_name(kAllMetrics[i - 1])) +
                                     " value '" + cols[i] + "' is not a non-negative integer",
                                 {Diagnostic{"BAD_VALUE", where, cols[i]}});
            }
            r.set(kAllMetrics[i - 1], static_cast<std::uint32_t>(v));
        }
        records.push_back(std::move(r));
    }
    if (!have_header) {
        throw InputError("metrics table: missing header '" + std::string(kMetricsTableHeader) + "'");
    }
    return ProjectMetrics::from_records(std::move(project_name), std::move(records));
}

std::string write_metrics_table(const ProjectMetrics& pm) {
    std::string out(kMetricsTableHeader);
    out += '\n';
    for (const auto& r : pm.per_class) {
        out += r.class_name;
        for (Metric m : kAllMetrics) {
            out += ',';
            out += std::to_string(r.value(m));
        }
        out += '\n';
    }
    return out;
}

namespace detail {

Json means_to_json(const MetricMeans& means) {
    Json j = Json::object();
    for (Metric m : kAllMetrics) {
        j[std::string(metric_name(m))] = means[m];
    }
    return j;
}

MetricMeans means_from_json(const Json& j, const std::string& path) {
    expect_object(j, path);
    expect_keys(j, path, {"WMC", "DIT", "NOC", "CBO", "RFC", "LCOM"});
    MetricMeans means;
    for (Metric m : kAllMetrics) {
        const std::string key(metric_name(m));
        double v = as_number(require_key(j, key, path), child(path, key));
        if (v < 0) {
            schema_error(child(path, key), "mean must be non-negative");
        }
        means[m] = v;
    }
    return means;
}

Json metrics_to_json(const ProjectMetrics& pm) {
    Json root = Json::object();
    root["schemaVersion"] = kMetricsDocumentSchemaVersion;
    root["kind"] = "metrics";
    root["project"] = pm.project_name;
    Json classes = Json::array();
    for (const auto& r : pm.per_class) {
        Json cj = Json::object();
        cj["class"] = r.class_name;
        for (Metric m : kAllMetrics) {
            cj[std::string(metric_name(m))] = r.value(m);
        }
        classes.push_back(std::move(cj));
    }
    root["classes"] = std::move(classes);
    root["means"] = means_to_json(pm.means);
    return root;
}

ProjectMetrics metrics_from_json(const Json& j, const std::string& path) {
    expect_object(j, path);
    expect_schema_version(j, kMetricsDocumentSchemaVersion, path);
    if (as_string(require_key(j, "kind", path), child(path, "kind")) != "metrics") {
        schema_error(child(path, "kind"), "expected \"metrics\"");
    }
    std::string project;
    if (const Json* p = find_key(j, "project")) {
        project = as_string(*p, child(path, "project"));
    }
    const std::string cpath = child(path, "classes");
    const Json& classes = expect_array(require_key(j, "classes", path), cpath);
    std::vector<MetricRecord> records;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const std::string p = child(cpath, i);
        const Json& cj = expect_object(classes[i], p);
        expect_keys(cj, p, {"class", "WMC", "DIT", "NOC", "CBO", "RFC", "LCOM"});
        MetricRecord r;
        r.class_name = as_string(require_key(cj, "class", p), child(p, "class"));
        for (Metric m : kAllMetrics) {
            const std::string key(metric_name(m));
            long long v = as_integer(require_key(cj, key, p), child(p, key));
            if (v < 0 || v > 0xFFFFFFFFLL) {
                schema_error(child(p, key), "metric value out of range");
            }
            r.set(m, static_cast<std::uint32_t>(v));
        }
        records.push_back(std::move(r));
    }
    // Means are always re-derived from the rows; a stored "means" object is
    // informational and only checked for shape.
    if (const Json* means = find_key(j, "means")) {
        means_from_json(*means, child(path, "means"));
    }
    return ProjectMetrics::from_records(std::move(project), std::move(records));
}

} // namespace detail

ProjectMetrics parse_metrics_document(std::string_view text) {
    Json root = detail::parse_json(text, "metrics document");
    detail::expect_object(root, "");
    detail::expect_keys(root, "", {"schemaVersion", "kind", "project", "classes", "means", "provenance"});
    return detail::metrics_from_json(root, "");
}

std::string write_metrics_document(const ProjectMetrics& pm) {
    return detail::dump(detail::metrics_to_json(pm));
}

ProjectMetrics load_project_metrics_text(std::string_view text, const std::string& default_name) {
    std::string_view body = strip_bom(text);
    auto first = body.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && body[first] == '{') {
        if (looks_like_class_model(body)) {
            ClassModel model = load_class_model(body);
            ProjectMetrics pm = compute_all(model);
            if (pm.project_name.empty()) {
                pm.project_name = default_name;
            }
            return pm;
        }
        ProjectMetrics pm = parse_metrics_document(body);
        if (pm.project_name.empty()) {
            pm.project_name = default_name;
        }
        return pm;
    }
    return parse_metrics_table(body, default_name);
}

ProjectMetrics load_project_metrics(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read metrics input '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_project_metrics_text(buf.str(), path.stem().string());
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what(), e.diagnostics());
    }
}

} // namespace ckeval

#include "ckeval/versions.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "ckeval/format.hpp"
#include "ckeval/metrics_io.hpp"

namespace ckeval {

std::vector<VersionVerdict> compare_versions(std::span<const VersionRecord> records, std::span<const Metric> metrics,
                                             const DirectionTable& directions) {
    if (records.size() < 2) {
        throw InputError("version comparison needs at least two versions, got " + std::to_string(records.size()),
                         {Diagnostic{"TOO_FEW_VERSIONS", "", std::to_string(records.size())}});
    }
    if (metrics.empty()) {
        throw InputError("version comparison needs at least one metric",
                         {Diagnostic{"EMPTY_SELECTION", "", "no metric selected"}});
    }
    std::set<std::string> names;
    for (const auto& r : records) {
        if (!names.insert(r.name).second) {
            throw InputError("duplicate version name '" + r.name + "'", {Diagnostic{"DUPLICATE_VERSION", r.name, ""}});
        }
        for (Metric m : kAllMetrics) {
            if (!(r.means[m] >= 0)) {
                throw InputError("version '" + r.name + "' has a negative " + std::string(metric_name(m)) + " mean",
                                 {Diagnostic{"NEGATIVE_MEAN", r.name, std::string(metric_name(m))}});
            }
        }
    }

    std::vector<VersionVerdict> out;
    for (Metric m : metrics) {
        VersionVerdict v;
        v.metric = m;
        v.direction = directions[m];
        v.min_value = records.front().means[m];
        v.max_value = records.front().means[m];
        for (const auto& r : records) {
            v.min_value = std::min(v.min_value, r.means[m]);
            v.max_value = std::max(v.max_value, r.means[m]);
        }
        for (const auto& r : records) {
            if (r.means[m] == v.min_value) {
                v.min_versions.push_back(r.name);
            }
            if (r.means[m] == v.max_value) {
                v.max_versions.push_back(r.name);
            }
        }
        auto& in = v.interpretation;
        if (v.direction == Direction::HigherIsWorse) {
            in.quality_worst = in.effort_most = v.max_versions;
            in.quality_best = in.effort_least = v.min_versions;
        } else {
            in.quality_best = in.effort_least = v.max_versions;
            in.quality_worst = in.effort_most = v.min_versions;
        }
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read version input '" + path.string() + "'",
                         {Diagnostic{"UNREADABLE", path.string(), "cannot open"}});
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string first_content_line(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.find_first_not_of(" \t\r\xEF\xBB\xBF");
        if (pos != std::string::npos && line[pos] != '#') {
            return line.substr(pos);
        }
    }
    return {};
}

std::vector<std::string> split_cells(const std::string& line, char delim) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, delim)) {
        auto b = cell.find_first_not_of(" \t");
        auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == delim) {
        cells.emplace_back();
    }
    return cells;
}

char detect_delimiter(const std::string& header) {
    return header.find(',') == std::string::npos && header.find('\t') != std::string::npos ? '\t' : ',';
}

} // namespace

bool looks_like_version_table(std::string_view text) {
    std::string header = first_content_line(text);
    auto cells = split_cells(header, detect_delimiter(header));
    if (cells.empty()) {
        return false;
    }
    std::string first = cells.front();
    std::transform(first.begin(), first.end(), first.begin(), [](unsigned char c) { return std::toupper(c); });
    return first == kVersionTableFirstColumn;
}

std::vector<VersionRecord> parse_version_table(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<VersionRecord> out;
    bool have_header = false;
    char delim = ',';
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) {
            line.erase(0, 3);
        }
        auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') {
            continue;
        }
        const std::string where = "line " + std::to_string(line_no);
        if (!have_header) {
            delim = detect_delimiter(line);
            auto cells = split_cells(line, delim);
            static const char* expected[] = {"VERSION", "PATH", "WMC", "DIT", "NOC", "CBO", "RFC", "LCOM"};
            bool ok = cells.size() == 8;
            for (std::size_t i = 0; ok && i < 8; ++i) {
                std::string up = cells[i];
                std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
                ok = up == expected[i];
            }
            if (!ok) {
                throw InputError("version table " + where + ": expected header VERSION,PATH,WMC,DIT,NOC,CBO,RFC,LCOM",
                                 {Diagnostic{"BAD_HEADER", where, line}});
            }
            have_header = true;
            continue;
        }
        auto cells = split_cells(line, delim);
        if (cells.size() != 8) {
            throw InputError("version table " + where + ": expected 8 columns, found " + std::to_string(cells.size()),
                             {Diagnostic{"BAD_ROW", where, "wrong column count"}});
        }
        VersionRecord r;
        r.name = cells[0];
        r.source_path = cells[1];
        for (std::size_t i = 0; i < 6; ++i) {
            double v = 0;
            if (!parse_non_negative(cells[i + 2], v)) {
                throw InputError("version table " + where + ": " + std::string(metric_name(kAllMetrics[i])) +
                                     " mean '" + cells[i + 2] + "' is not a non-negative number",
                                 {Diagnostic{"BAD_VALUE", where, cells[i + 2]}});
            }
            r.means[kAllMetrics[i]] = v;
        }
        out.push_back(std::move(r));
    }
    if (!have_header) {
        throw InputError("version table: missing header");
    }
    return out;
}

std::string write_version_table(std::span<const VersionRecord> records) {
    std::string out = "VERSION,PATH,WMC,DIT,NOC,CBO,RFC,LCOM\n";
    for (const auto& r : records) {
        out += r.name + "," + r.source_path;
        for (Metric m : kAllMetrics) {
            out += "," + format_number(r.means[m]);
        }
        out += '\n';
    }
    return out;
}

std::vector<VersionRecord> load_versions(std::span<const VersionInput> inputs, std::string_view name_prefix) {
    std::vector<VersionRecord> out;
    std::vector<bool> explicit_name;
    for (const auto& input : inputs) {
        const std::string text = read_file(input.path);
        try {
            if (looks_like_version_table(text)) {
                auto rows = parse_version_table(text);
                if (input.name && rows.size() == 1) {
                    rows.front().name = *input.name;
                }
                for (auto& row : rows) {
                    explicit_name.push_back(!row.name.empty());
                    if (row.source_path.empty()) {
                        row.source_path = input.path.string();
                    }
                    out.push_back(std::move(row));
                }
                continue;
            }
            ProjectMetrics pm = load_project_metrics_text(text, input.path.stem().string());
            out.push_back(VersionRecord{input.name.value_or(""), input.path.string(), pm.means});
            explicit_name.push_back(input.name.has_value());
        } catch (const InputError& e) {
            throw InputError(input.path.string() + ": " + e.what(), e.diagnostics());
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!explicit_name[i]) {
            out[i].name = std::string(name_prefix) + "-" + std::to_string(i + 1);
        }
    }
    std::set<std::string> seen;
    for (const auto& r : out) {
        if (!seen.insert(r.name).second) {
            throw InputError("duplicate version name '" + r.name + "'", {Diagnostic{"DUPLICATE_VERSION", r.name, ""}});
        }
    }
    return out;
}

} // namespace ckeval

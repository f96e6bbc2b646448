#include "ckeval/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "ckeval/chart.hpp"
#include "ckeval/export.hpp"
#include "ckeval/format.hpp"
#include "ckeval/inference.hpp"
#include "ckeval/java_lower.hpp"
#include "ckeval/metrics_io.hpp"
#include "ckeval/report.hpp"
#include "ckeval/rules.hpp"
#include "ckeval/version.hpp"
#include "ckeval/versions.hpp"

namespace ckeval::cli {

namespace {

namespace fs = std::filesystem;

/// Option values CLI11 cannot check itself; reported like parse errors.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RangeSelection parse_selection(const std::vector<std::string>& select) {
    RangeSelection selection;
    for (const auto& s : select) {
        auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw UsageError("--select expects METRIC=RANGE, got '" + s + "'");
        }
        auto metric = parse_metric(s.substr(0, eq));
        if (!metric) {
            throw UsageError("unknown metric '" + s.substr(0, eq) + "' in --select");
        }
        try {
            if (!selection.emplace(*metric, Condition::parse(s.substr(eq + 1))).second) {
                throw UsageError("metric " + std::string(metric_name(*metric)) + " selected twice");
            }
        } catch (const InputError& e) {
            throw UsageError(std::string("--select ") + s + ": " + e.what());
        }
    }
    return selection;
}

std::vector<Metric> parse_metric_list(const std::vector<std::string>& names) {
    std::vector<Metric> metrics;
    for (const auto& m : names) {
        auto parsed = parse_metric(m);
        if (!parsed) {
            throw UsageError("unknown metric '" + m + "' in --metrics");
        }
        if (std::find(metrics.begin(), metrics.end(), *parsed) == metrics.end()) {
            metrics.push_back(*parsed);
        }
    }
    return metrics;
}

struct GlobalOptions {
    std::string format = "text";
    std::string out;
    std::string locale = "en";
    bool strict = false;
};

struct AnalyzeOptions {
    std::vector<std::string> roots;
    std::string project;
};

struct EvaluateOptions {
    std::string input;
    std::string rules = "default";
    std::string scope = "class";
    std::vector<std::string> select;
};

struct CompareOptions {
    std::vector<std::string> inputs;
    std::vector<std::string> names;
    std::vector<std::string> metrics;
    std::string chart;
    std::string noc_direction = "higher-is-worse";
};

struct RulesOptions {
    std::string base = "default";
    std::string file;
};

class Session {
public:
    Session(const GlobalOptions& g, std::ostream& out, std::ostream& err) : g_(g), out_(out), err_(err) {}

    Locale locale() const { return g_.locale == "tr" ? Locale::Tr : Locale::En; }
    bool structured() const { return g_.format == "structured"; }

    void emit(std::string content) const {
        if (!content.empty() && content.back() != '\n') {
            content += '\n';
        }
        if (g_.out.empty()) {
            out_ << content;
        } else {
            write_output(g_.out, content);
        }
    }

    void warn(const std::string& line) const { err_ << "warning: " << line << '\n'; }

    void analyze(const AnalyzeOptions& o) const {
        std::vector<fs::path> roots(o.roots.begin(), o.roots.end());
        std::string project = o.project;
        if (project.empty()) {
            project = fs::absolute(roots.front()).lexically_normal().filename().string();
            if (project.empty()) {
                project = fs::absolute(roots.front()).lexically_normal().parent_path().filename().string();
            }
        }
        java::SourceAnalysis analysis = java::analyze_sources(roots, project, g_.strict);
        for (const auto& d : analysis.parse_errors) {
            warn(java::to_string(d) + " (file skipped)");
        }
        for (const auto& d : analysis.warnings) {
            warn(to_string(d));
        }
        ProjectMetrics pm = compute_all(analysis.model);
        if (structured()) {
            emit(export_structured(AnalysisResult{std::move(pm), make_provenance(analysis.files)}));
        } else {
            emit(write_metrics_table(pm));
        }
    }

    void evaluate(const EvaluateOptions& o) const {
        RangeSelection selection = parse_selection(o.select);
        ProjectMetrics pm = load_project_metrics(o.input);
        Provenance provenance = make_provenance({fs::path(o.input)});
        if (!selection.empty()) {
            auto partitions = filter_by_ranges(pm, selection);
            if (structured()) {
                emit(export_structured(FilterResult{std::move(partitions), std::move(provenance)}));
            } else {
                emit(render_text(make_filter_report(partitions, locale())));
            }
            return;
        }
        KnowledgeBase kb = load_rule_base(o.rules);
        EvaluationScope scope = o.scope == "project" ? EvaluationScope::Project : EvaluationScope::Class;
        auto assessments = evaluate_project(pm, kb, scope);
        if (fs::exists(o.rules)) {
            provenance.inputs.push_back(describe_input(o.rules));
        }
        if (structured()) {
            emit(export_structured(EvaluationResult{kb.name(), scope, std::move(assessments), std::move(provenance)}));
        } else {
            emit(render_text(make_assessment_report(assessments, kb.name(), locale())));
        }
    }

    void compare(const CompareOptions& o) const {
        if (o.names.size() > o.inputs.size()) {
            throw UsageError("more --name values than inputs");
        }
        std::vector<VersionInput> inputs;
        std::vector<fs::path> paths;
        for (std::size_t i = 0; i < o.inputs.size(); ++i) {
            VersionInput in{o.inputs[i], std::nullopt};
            if (i < o.names.size() && !o.names[i].empty()) {
                in.name = o.names[i];
            }
            inputs.push_back(std::move(in));
            paths.emplace_back(o.inputs[i]);
        }
        std::vector<Metric> metrics = parse_metric_list(o.metrics);
        std::sort(metrics.begin(), metrics.end(), [](Metric a, Metric b) { return index_of(a) < index_of(b); });
        if (o.metrics.empty()) {
            metrics.assign(kAllMetrics.begin(), kAllMetrics.end());
        }
        DirectionTable directions;
        if (o.noc_direction == "higher-is-better") {
            directions[Metric::NOC] = Direction::HigherIsBetter;
        }

        auto records = load_versions(inputs, version_prefix(locale()));
        auto verdicts = compare_versions(records, metrics, directions);
        if (!o.chart.empty()) {
            emit_chart(ChartSpec::from_versions(records, metrics), o.chart);
        }
        if (structured()) {
            emit(export_structured(
                ComparisonResult{std::move(records), std::move(verdicts), make_provenance(paths)}));
        } else {
            emit(render_text(make_comparison_report(verdicts, locale())));
        }
    }

    void rules_list(const RulesOptions& o) const {
        KnowledgeBase kb = load_rule_base(o.base);
        if (structured()) {
            emit(serialize_rules(kb));
            return;
        }
        std::string text = kb.name() + " (" + std::to_string(kb.size()) + " rules)\n";
        for (const auto& rule : kb.rules()) {
            text += rule.id + " : " + std::string(metric_name(rule.metric)) + " " + rule.condition.display() + " ->";
            for (std::size_t i = 0; i < rule.conclusions.size(); ++i) {
                const auto& c = rule.conclusions[i];
                text += (i == 0 ? " " : ", ") + c.attribute + "=" + std::string(level_name(c.level));
            }
            text += '\n';
        }
        emit(text);
    }

    void rules_check(const RulesOptions& o) const {
        KnowledgeBase kb = load_rule_base(o.file);
        std::string text = o.file + ": " + std::to_string(kb.size()) + " rules, no overlaps\n";
        bool complete = true;
        for (Metric m : kAllMetrics) {
            if (auto gap = kb.first_uncovered(m)) {
                complete = false;
                text += std::string(metric_name(m)) + ": no rule admits " + std::to_string(*gap) + '\n';
            }
        }
        text += complete ? "coverage: complete\n" : "coverage: incomplete\n";
        if (!complete && g_.strict) {
            err_ << text;
            throw InputError(o.file + ": rule base does not cover every metric value");
        }
        emit(text);
    }

private:
    const GlobalOptions& g_;
    std::ostream& out_;
    std::ostream& err_;
};

void print_diagnostics(const InputError& e, std::ostream& err) {
    err << "error: " << e.what() << '\n';
    for (const auto& d : e.diagnostics()) {
        err << "  " << to_string(d) << '\n';
    }
}

} // namespace

int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"C&K metric calculator and rule-based quality evaluator", "ckeval"};
    app.set_version_flag("--version", std::string(kVersionString));
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
    app.add_option("--out", g.out, "Write the report to FILE instead of standard output");
    app.add_option("--locale", g.locale, "Report language")
        ->check(CLI::IsMember({"en", "tr"}))
        ->capture_default_str();
    app.add_flag("--strict", g.strict, "Treat skipped files and incomplete rule bases as errors");

    AnalyzeOptions ao;
    auto* analyze = app.add_subcommand("analyze", "Parse Java sources and print the per-class metrics table");
    analyze->fallthrough();
    analyze->add_option("roots", ao.roots, "Source files or directories")->required();
    analyze->add_option("--project", ao.project, "Project name (default: name of the first root)");

    EvaluateOptions eo;
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate a metrics table against a rule base");
    evaluate->fallthrough();
    evaluate->add_option("input", eo.input, "Metrics table, metrics document or class-model document")
        ->required();
    evaluate->add_option("--rules", eo.rules, "default, paper or a rules document")->capture_default_str();
    evaluate->add_option("--scope", eo.scope, "Evaluate each class or the project means")
        ->check(CLI::IsMember({"class", "project"}))
        ->capture_default_str();
    evaluate->add_option("--select", eo.select, "METRIC=RANGE filter (manual mode); repeatable")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    CompareOptions co;
    auto* compare = app.add_subcommand("compare", "Compare metric means across versions");
    compare->fallthrough();
    compare->add_option("inputs", co.inputs, "One input per version, or a version means table")->required();
    compare->add_option("--name", co.names, "Version name for the matching input; repeatable")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    compare->add_option("--metrics", co.metrics, "Comma-separated metrics to compare (default: all)")
        ->delimiter(',');
    compare->add_option("--chart", co.chart, "Also write an SVG bar chart to FILE");
    compare->add_option("--noc-direction", co.noc_direction, "How a larger NOC reads")
        ->check(CLI::IsMember({"higher-is-worse", "higher-is-better"}))
        ->capture_default_str();

    RulesOptions ro;
    auto* rules = app.add_subcommand("rules", "Inspect rule bases");
    rules->fallthrough();
    rules->require_subcommand(1);
    auto* rules_list = rules->add_subcommand("list", "Print the rules of a base");
    rules_list->fallthrough();
    rules_list->add_option("base", ro.base, "default, paper or a rules document")->capture_default_str();
    auto* rules_check = rules->add_subcommand("check", "Validate a rules document and report coverage gaps");
    rules_check->fallthrough();
    rules_check->add_option("file", ro.file, "Rules document")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersionString << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        err << app.help();  // delegates to the innermost parsed subcommand
        return kExitUsage;
    }

    Session session(g, out, err);
    try {
        if (analyze->parsed()) {
            session.analyze(ao);
        } else if (evaluate->parsed()) {
            session.evaluate(eo);
        } else if (compare->parsed()) {
            session.compare(co);
        } else if (rules_list->parsed()) {
            session.rules_list(ro);
        } else if (rules_check->parsed()) {
            session.rules_check(ro);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InputError& e) {
        print_diagnostics(e, err);
        return kExitInput;
    } catch (const OutputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}

} // namespace ckeval::cli

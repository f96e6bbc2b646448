#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ckeval/export.hpp"
#include "ckeval/metrics_io.hpp"
#include "ckeval/report.hpp"
#include "ckeval/versions.hpp"
#include "ckeval/cli.hpp"

using namespace ckeval;
using namespace ckeval::cli;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const char* name) {
    return (fs::path(CKEVAL_FIXTURES_DIR) / name).string();
}

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("ckeval_cli_" + std::to_string(std::random_device{}()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

} // namespace

TEST(Cli, HelpGoesToStdoutWithExitZero) {
    CliRun r = run({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    for (const char* word : {"analyze", "evaluate", "compare", "rules", "--format", "--locale", "--strict"}) {
        EXPECT_NE(r.out.find(word), std::string::npos) << word;
    }
    CliRun sub = run({"compare", "--help"});
    EXPECT_EQ(sub.code, kExitOk);
    EXPECT_NE(sub.out.find("--chart"), std::string::npos);
    EXPECT_NE(sub.out.find("--noc-direction"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    for (std::vector<std::string> args : std::vector<std::vector<std::string>>{
             {}, {"--bogus"}, {"bogus"}, {"compare", "x.csv", "--unknown"}, {"evaluate"},
             {"--format", "xml", "rules", "list"}, {"--locale", "de", "rules", "list"},
             {"evaluate", fixture("moreunit_classes.tsv"), "--select", "WMC"},
             {"evaluate", fixture("moreunit_classes.tsv"), "--select", "FOO=1-2"},
             {"compare", fixture("moreunit_versions.csv"), "--metrics", "WMC,XYZ"}}) {
        CliRun r = run(args);
        EXPECT_EQ(r.code, kExitUsage) << ::testing::PrintToString(args) << r.err;
        EXPECT_TRUE(r.out.empty());
        EXPECT_EQ(r.err.rfind("error: ", 0), 0u) << r.err;
    }
    CliRun r = run({"--bogus"});
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(Cli, InputErrorsExitTwo) {
    TempDir dir;
    std::ofstream(dir.file("bad.csv")) << "CLASS,WMC\nA,1\n";
    EXPECT_EQ(run({"evaluate", dir.file("bad.csv")}).code, kExitInput);
    EXPECT_EQ(run({"evaluate", dir.file("missing.csv")}).code, kExitInput);
    EXPECT_EQ(run({"analyze", dir.file("nowhere")}).code, kExitInput);
    EXPECT_EQ(run({"compare", fixture("moreunit_classes.tsv")}).code, kExitInput);
    EXPECT_EQ(run({"evaluate", fixture("moreunit_classes.tsv"), "--rules", dir.file("none.json")}).code, kExitInput);
    CliRun out = run({"--out", dir.file("no/such/dir/x.txt"), "rules", "list"});
    EXPECT_EQ(out.code, kExitInput);
    EXPECT_NE(out.err.find("error:"), std::string::npos);
}

TEST(Cli, AnalyzeEmptyDirectoryPrintsHeaderOnly) {
    TempDir dir;
    CliRun r = run({"analyze", dir.path().string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, std::string(kMetricsTableHeader) + "\n");
}

TEST(Cli, AnalyzeCorpusMatchesExpectedTable) {
    CliRun r = run({"analyze", fixture("corpus")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(parse_metrics_table(r.out).per_class,
              load_project_metrics(fixture("corpus_expected.csv")).per_class);
}

TEST(Cli, AnalyzeSkipsBrokenFilesUnlessStrict) {
    TempDir dir;
    std::ofstream(dir.file("A.java")) << "class A { void f() {} }";
    std::ofstream(dir.file("B.java")) << "class B { void f( }";
    CliRun lenient = run({"analyze", dir.path().string()});
    EXPECT_EQ(lenient.code, kExitOk);
    EXPECT_NE(lenient.err.find("B.java:1:"), std::string::npos) << lenient.err;
    EXPECT_NE(lenient.out.find("\nA,1,0,0,0,1,0\n"), std::string::npos) << lenient.out;
    EXPECT_EQ(run({"--strict", "analyze", dir.path().string()}).code, kExitInput);
}

TEST(Cli, AnalyzeStructuredFeedsEvaluate) {
    TempDir dir;
    CliRun a = run({"--format", "structured", "--out", dir.file("m.json"), "analyze", fixture("corpus")});
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_TRUE(a.out.empty());
    CliRun e = run({"evaluate", dir.file("m.json"), "--scope", "project"});
    EXPECT_EQ(e.code, kExitOk) << e.err;
    EXPECT_NE(e.out.find("Fired rules"), std::string::npos);
}

TEST(Cli, CompareTurkishShowsTie) {
    CliRun r = run({"compare", fixture("moreunit_versions.csv"), "--locale", "tr"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("SÜRÜM-2 ve SÜRÜM-3 (5)"), std::string::npos);
    CliRun wmc = run({"--locale", "tr", "compare", fixture("moreunit_versions.csv"), "--metrics", "WMC"});
    EXPECT_EQ(wmc.out, read(fixture("moreunit_wmc_tr.golden")));
}

TEST(Cli, CompareSeparateFilesWithNamesAndChart) {
    TempDir dir;
    auto records = parse_version_table(read(fixture("moreunit_versions.csv")));
    std::vector<std::string> args{"compare"};
    for (std::size_t i = 0; i < records.size(); ++i) {
        std::vector<VersionRecord> one{records[i]};
        one[0].name.clear();
        std::string path = dir.file("v" + std::to_string(i + 1) + ".csv");
        std::ofstream(path) << write_version_table(one);
        args.push_back(path);
    }
    for (const char* n : {"a", "b", "c", "d", "e"}) {
        args.insert(args.end(), {"--name", n});
    }
    args.insert(args.end(), {"--metrics", "WMC", "--chart", dir.file("chart.svg")});
    CliRun r = run(args);
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find(": b and c (5)"), std::string::npos) << r.out;
    std::string svg = read(dir.file("chart.svg"));
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);

    args.insert(args.end(), {"--name", "f"});
    EXPECT_EQ(run(args).code, kExitUsage);
}

TEST(Cli, EvaluateSelectGivesFilterReport) {
    CliRun r = run({"evaluate", fixture("moreunit_classes.tsv"), "--select", "WMC=2-5", "--select", "LCOM=0,1,2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("WMC: 2 - 5"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("LCOM: 0, 1, 2"), std::string::npos);
    EXPECT_NE(r.out.find(" moreUnit.elements.ClassTypeFacade : 9\n"), std::string::npos);
}

TEST(Cli, TextAndStructuredCarryTheSameVerdicts) {
    CliRun text = run({"compare", fixture("moreunit_versions.csv")});
    CliRun json = run({"--format", "structured", "compare", fixture("moreunit_versions.csv")});
    ASSERT_EQ(json.code, kExitOk);
    auto doc = nlohmann::json::parse(json.out);
    ASSERT_EQ(doc["verdicts"].size(), 6u);
    for (const auto& v : doc["verdicts"]) {
        std::string min_line;
        std::vector<std::string> names = v["min"]["versions"];
        min_line = join_versions(names, Locale::En, TieStyle::Conjunction) + " (" +
                   v["min"]["value"].dump() + ")";
        // dump() prints 0.0 for zero; the text report prints the shortest form.
        if (v["min"]["value"] == 0) {
            min_line = join_versions(names, Locale::En, TieStyle::Conjunction) + " (0)";
        }
        EXPECT_NE(text.out.find(" : " + min_line + "\n"), std::string::npos) << min_line;
    }

    CliRun etext = run({"evaluate", fixture("moreunit_classes.tsv")});
    CliRun ejson = run({"--format", "structured", "evaluate", fixture("moreunit_classes.tsv")});
    auto edoc = nlohmann::json::parse(ejson.out);
    ASSERT_EQ(edoc["assessments"].size(), 7u);
    for (const auto& a : edoc["assessments"]) {
        std::string fired;
        for (const auto& id : a["firedRules"]) {
            fired += fired.empty() ? id.get<std::string>() : ", " + id.get<std::string>();
        }
        EXPECT_NE(etext.out.find(" : " + fired + "\n"), std::string::npos) << fired;
    }
}

TEST(Cli, RulesListAndCheck) {
    CliRun list = run({"rules", "list"});
    EXPECT_EQ(list.code, kExitOk);
    EXPECT_EQ(list.out.rfind("default (42 rules)\n", 0), 0u);
    EXPECT_EQ(run({"rules", "list", "paper"}).out.rfind("paper (3 rules)\n", 0), 0u);

    TempDir dir;
    std::string paper = dir.file("paper.json");
    std::ofstream(paper) << paper_rules_document();
    CliRun check = run({"rules", "check", paper});
    EXPECT_EQ(check.code, kExitOk);
    EXPECT_NE(check.out.find("coverage: incomplete"), std::string::npos);
    EXPECT_EQ(run({"--strict", "rules", "check", paper}).code, kExitInput);

    std::string full = dir.file("default.json");
    std::ofstream(full) << default_rules_document();
    CliRun ok = run({"--strict", "rules", "check", full});
    EXPECT_EQ(ok.code, kExitOk);
    EXPECT_NE(ok.out.find("coverage: complete"), std::string::npos);

    std::ofstream(dir.file("overlap.json")) << R"({"schemaVersion": 1, "rules": [
        {"id": "a", "metric": "WMC", "range": [0, 5], "conclusions": [{"attribute": "quality", "level": "High"}]},
        {"id": "b", "metric": "WMC", "range": [5, 10], "conclusions": [{"attribute": "quality", "level": "Low"}]}]})";
    EXPECT_EQ(run({"rules", "check", dir.file("overlap.json")}).code, kExitInput);
}

TEST(Cli, OutWritesFileAndLeavesStdoutEmpty) {
    TempDir dir;
    CliRun r = run({"--out", dir.file("r.txt"), "compare", fixture("moreunit_versions.csv")});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(read(dir.file("r.txt")), run({"compare", fixture("moreunit_versions.csv")}).out);
}

TEST(Cli, InputsAreNotModified) {
    std::string before = read(fixture("moreunit_classes.tsv"));
    run({"evaluate", fixture("moreunit_classes.tsv"), "--scope", "project"});
    EXPECT_EQ(read(fixture("moreunit_classes.tsv")), before);
}

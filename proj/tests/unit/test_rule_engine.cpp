#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "ckeval/inference.hpp"
#include "ckeval/metrics_io.hpp"
#include "ckeval/rules.hpp"

using namespace ckeval;

namespace {

using Pairs = std::vector<std::pair<std::string, Level>>;

Rule rule(std::string id, Metric m, Condition c, Pairs conclusions = {{"complexity", Level::Low}}) {
    Rule r;
    r.id = std::move(id);
    r.metric = m;
    r.condition = std::move(c);
    for (auto& [a, l] : conclusions) {
        r.conclusions.push_back(Conclusion{a, l});
    }
    return r;
}

Pairs pairs_of(const Assessment& a) {
    Pairs out;
    for (const auto& d : a.derived) {
        out.emplace_back(d.attribute, d.level);
    }
    return out;
}

std::vector<Assessment> run(const KnowledgeBase& kb, std::vector<Fact> facts) {
    return forward_chain(facts, kb);
}

ProjectMetrics moreunit_classes() {
    return load_project_metrics(std::filesystem::path(CKEVAL_FIXTURES_DIR) / "moreunit_classes.tsv");
}

std::vector<std::uint32_t> values(const std::vector<ClassValue>& cv) {
    std::vector<std::uint32_t> out;
    for (const auto& v : cv) {
        out.push_back(v.value);
    }
    return out;
}

} // namespace

TEST(Level, TotalOrderAndNames) {
    EXPECT_LT(Level::VeryLow, Level::Low);
    EXPECT_LT(Level::Low, Level::Normal);
    EXPECT_LT(Level::Normal, Level::High);
    EXPECT_LT(Level::High, Level::VeryHigh);
    for (Level l : {Level::VeryLow, Level::Low, Level::Normal, Level::High, Level::VeryHigh}) {
        EXPECT_EQ(parse_level(level_name(l)), l);
    }
    EXPECT_FALSE(parse_level("Middling"));
}

TEST(Condition, ParseAndMatch) {
    Condition range = Condition::parse("2-5");
    EXPECT_TRUE(range.matches(2));
    EXPECT_TRUE(range.matches(5));
    EXPECT_FALSE(range.matches(6));
    EXPECT_EQ(range.display(), "2 - 5");
    Condition open = Condition::parse("26-");
    EXPECT_TRUE(open.matches(1e9));
    EXPECT_EQ(open.display(), "26 -");
    Condition set = Condition::parse("0,1,2");
    EXPECT_TRUE(set.matches(1));
    EXPECT_FALSE(set.matches(1.5));
    EXPECT_EQ(set.display(), "0, 1, 2");
    EXPECT_EQ(Condition::parse("7"), Condition::values({7}));
    EXPECT_EQ(Condition::parse(" 2 - 5 "), range);
    for (const char* bad : {"", "5-2", "a", "1,,2", "-3", "2-x"}) {
        EXPECT_THROW(Condition::parse(bad), InputError) << bad;
    }
    EXPECT_EQ(Condition::parse(set.compact()), set);
    EXPECT_EQ(Condition::parse(open.compact()), open);
}

TEST(LoadRules, OneRulePerMetricCoveringEverything) {
    std::string doc = R"({"schemaVersion": 1, "name": "six", "rules": [)";
    for (Metric m : kAllMetrics) {
        std::string name(metric_name(m));
        doc += R"({"id": ")" + name + R"(.all", "metric": ")" + name +
               R"(", "range": [0, null], "conclusions": [{"attribute": "quality", "level": "Normal"}]})";
        doc += m == Metric::LCOM ? "" : ",";
    }
    doc += "]}";
    KnowledgeBase kb = load_rules(doc);
    EXPECT_EQ(kb.size(), 6u);
    EXPECT_TRUE(kb.is_complete());
    EXPECT_EQ(kb.name(), "six");
}

TEST(LoadRules, BoundaryOverlapIsRejected) {
    const char* doc = R"({"schemaVersion": 1, "name": "x", "rules": [
        {"id": "a", "metric": "WMC", "range": [0, 5], "conclusions": [{"attribute": "quality", "level": "High"}]},
        {"id": "b", "metric": "WMC", "range": [5, 10], "conclusions": [{"attribute": "quality", "level": "Low"}]}]})";
    try {
        load_rules(doc);
        FAIL();
    } catch (const InputError& e) {
        std::string what = e.what();
        EXPECT_NE(what.find("'a'"), std::string::npos) << what;
        EXPECT_NE(what.find("'b'"), std::string::npos) << what;
        EXPECT_NE(what.find("5"), std::string::npos) << what;
    }
}

TEST(LoadRules, SchemaErrors) {
    auto reject = [](std::string_view doc) { EXPECT_THROW(load_rules(doc), InputError) << doc; };
    reject("[]");
    reject(R"({"schemaVersion": 1, "rules": []})");
    reject(R"({"schemaVersion": 2, "rules": [{"id": "a", "metric": "WMC", "values": [1],
              "conclusions": [{"attribute": "quality", "level": "High"}]}]})");
    reject(R"({"schemaVersion": 1, "rules": [{"id": "a", "metric": "XYZ", "values": [1],
              "conclusions": [{"attribute": "quality", "level": "High"}]}]})");
    reject(R"({"schemaVersion": 1, "rules": [{"id": "a", "metric": "WMC", "values": [],
              "conclusions": [{"attribute": "quality", "level": "High"}]}]})");
    reject(R"({"schemaVersion": 1, "rules": [{"id": "a", "metric": "WMC", "range": [4, 2],
              "conclusions": [{"attribute": "quality", "level": "High"}]}]})");
    reject(R"({"schemaVersion": 1, "rules": [{"id": "a", "metric": "WMC", "values": [1], "conclusions": []}]})");
    reject(R"({"schemaVersion": 1, "rules": [{"id": "a", "metric": "WMC", "values": [1],
              "conclusions": [{"attribute": "beauty", "level": "High"}]}]})");
    reject(R"({"schemaVersion": 1, "rules": [
              {"id": "a", "metric": "WMC", "values": [1], "conclusions": [{"attribute": "quality", "level": "High"}]},
              {"id": "a", "metric": "DIT", "values": [1], "conclusions": [{"attribute": "quality", "level": "High"}]}]})");
}

TEST(LoadRules, ExtraAttributesCanBeRegistered) {
    KnowledgeBase kb = load_rules(R"({"schemaVersion": 1, "attributes": ["beauty"], "rules": [
        {"id": "a", "metric": "WMC", "values": [1], "conclusions": [{"attribute": "beauty", "level": "High"}]}]})",
                                  "custom");
    EXPECT_EQ(kb.name(), "custom");
    EXPECT_EQ(kb.extra_attributes(), std::vector<std::string>{"beauty"});
}

TEST(DefaultRuleBase, FortyTwoRulesSevenBandsEach) {
    const KnowledgeBase& kb = default_rule_base();
    EXPECT_EQ(kb.size(), 42u);
    EXPECT_EQ(kb.name(), "default");
    for (Metric m : kAllMetrics) {
        EXPECT_EQ(std::count_if(kb.rules().begin(), kb.rules().end(), [&](const Rule& r) { return r.metric == m; }), 7);
    }
    EXPECT_TRUE(kb.is_complete());
}

TEST(DefaultRuleBase, ExhaustiveScanMatchesExactlyOneRule) {
    // Independent scan: count admitting conditions directly rather than via match().
    const KnowledgeBase& kb = default_rule_base();
    for (Metric m : kAllMetrics) {
        for (int v = 0; v <= 10000; ++v) {
            int hits = 0;
            for (const auto& r : kb.rules()) {
                hits += (r.metric == m && r.condition.matches(v)) ? 1 : 0;
            }
            ASSERT_EQ(hits, 1) << metric_name(m) << "=" << v;
            ASSERT_TRUE(kb.match(m, v)->condition.matches(v));
        }
    }
}

TEST(DefaultRuleBase, DocumentedBandEdges) {
    const KnowledgeBase& kb = default_rule_base();
    auto band = [&](Metric m, int v) { return kb.match(m, v)->band; };
    EXPECT_EQ(band(Metric::WMC, 0), "VeryLow");
    EXPECT_EQ(band(Metric::WMC, 5), "Low");
    EXPECT_EQ(band(Metric::WMC, 18), "High");
    EXPECT_EQ(band(Metric::WMC, 26), "VeryHigh");
    EXPECT_EQ(band(Metric::DIT, 5), "Normal");
    EXPECT_EQ(band(Metric::DIT, 11), "VeryHigh");
    EXPECT_EQ(band(Metric::CBO, 1), "VeryLow");
}

TEST(DefaultRuleBase, DitFiveConcludesLowComplexity) {
    auto a = run(default_rule_base(), {{Metric::DIT, 5, "c"}});
    ASSERT_EQ(a.size(), 1u);
    ASSERT_NE(a[0].find("complexity"), nullptr);
    EXPECT_EQ(a[0].find("complexity")->level, Level::Low);
    EXPECT_EQ(a[0].find("inheritanceDepth")->level, Level::Normal);
    // The default base reads low coupling the conventional way.
    auto c = run(default_rule_base(), {{Metric::CBO, 1, "c"}});
    EXPECT_EQ(c[0].find("quality")->level, Level::High);
}

TEST(PaperPreset, EachWorkedRuleFiresAloneWithItsEightConclusions) {
    const KnowledgeBase& kb = paper_rule_preset();
    EXPECT_EQ(kb.size(), 3u);
    EXPECT_FALSE(kb.is_complete());

    auto dit5 = run(kb, {{Metric::DIT, 5, "c"}});
    ASSERT_EQ(dit5.size(), 1u);
    EXPECT_EQ(dit5[0].fired_rules, std::vector<std::string>{"DIT.5"});
    EXPECT_EQ(pairs_of(dit5[0]), (Pairs{{"inheritanceDepth", Level::Normal},
                                        {"faultLikelihood", Level::Low},
                                        {"maintenanceEffort", Level::Low},
                                        {"quality", Level::High},
                                        {"understandability", Level::High},
                                        {"testability", Level::High},
                                        {"reusability", Level::High},
                                        {"complexity", Level::Low}}));

    auto wmc18 = run(kb, {{Metric::WMC, 18, "c"}});
    EXPECT_EQ(wmc18[0].fired_rules, std::vector<std::string>{"WMC.18"});
    EXPECT_EQ(pairs_of(wmc18[0]), (Pairs{{"methodCount", Level::High},
                                         {"faultLikelihood", Level::High},
                                         {"maintenanceEffort", Level::High},
                                         {"quality", Level::Low},
                                         {"understandability", Level::Low},
                                         {"robustness", Level::Low},
                                         {"reusability", Level::Low},
                                         {"complexity", Level::High}}));

    auto cbo1 = run(kb, {{Metric::CBO, 1, "c"}});
    EXPECT_EQ(cbo1[0].fired_rules, std::vector<std::string>{"CBO.1"});
    EXPECT_EQ(pairs_of(cbo1[0]), (Pairs{{"coupling", Level::VeryLow},
                                        {"modularDesign", Level::VeryLow},
                                        {"faultLikelihood", Level::VeryLow},
                                        {"maintenanceEffort", Level::VeryLow},
                                        {"quality", Level::VeryLow},
                                        {"understandability", Level::High},
                                        {"reusability", Level::VeryLow},
                                        {"complexity", Level::VeryLow}}));

    EXPECT_TRUE(run(kb, {{Metric::DIT, 4, "c"}})[0].fired_rules.empty());
}

TEST(ForwardChain, NoFactsNoAssessments) {
    EXPECT_TRUE(run(default_rule_base(), {}).empty());
}

TEST(ForwardChain, LastWriterWinsAndTraceKeepsEverything) {
    auto a = run(paper_rule_preset(), {{Metric::WMC, 18, "c"}, {Metric::CBO, 1, "c"}});
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].fired_rules, (std::vector<std::string>{"WMC.18", "CBO.1"}));
    EXPECT_EQ(a[0].trace.size(), 16u);
    // Hand-applied: CBO.1 fires second, so its levels win on shared attributes.
    EXPECT_EQ(pairs_of(a[0]), (Pairs{{"methodCount", Level::High},
                                     {"faultLikelihood", Level::VeryLow},
                                     {"maintenanceEffort", Level::VeryLow},
                                     {"quality", Level::VeryLow},
                                     {"understandability", Level::High},
                                     {"robustness", Level::Low},
                                     {"reusability", Level::VeryLow},
                                     {"complexity", Level::VeryLow},
                                     {"coupling", Level::VeryLow},
                                     {"modularDesign", Level::VeryLow}}));
    EXPECT_EQ(a[0].find("quality")->rule_id, "CBO.1");
    EXPECT_EQ(a[0].find("robustness")->rule_id, "WMC.18");

    auto reversed = run(paper_rule_preset(), {{Metric::CBO, 1, "c"}, {Metric::WMC, 18, "c"}});
    EXPECT_EQ(reversed[0].find("quality")->level, Level::Low);
}

TEST(ForwardChain, ScopesAndErrors) {
    auto a = run(default_rule_base(), {{Metric::WMC, 1, "B"}, {Metric::WMC, 1, "A"}, {Metric::DIT, 0, "B"}});
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[0].scope, "B");
    EXPECT_EQ(a[0].fired_rules.size(), 2u);
    EXPECT_THROW(run(default_rule_base(), {{Metric::WMC, -1, "A"}}), InputError);
    EXPECT_THROW(run(default_rule_base(), {{Metric::WMC, std::nan(""), "A"}}), InputError);
}

TEST(ForwardChain, EveryDerivedPairIsTraceable) {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> value(0, 60);
    for (int i = 0; i < 300; ++i) {
        std::vector<Fact> facts;
        for (int k = 0; k < 8; ++k) {
            facts.push_back(Fact{kAllMetrics[static_cast<std::size_t>(value(rng)) % 6], double(value(rng)),
                                 "s" + std::to_string(k % 3)});
        }
        for (const auto& a : forward_chain(facts, default_rule_base())) {
            for (const auto& d : a.derived) {
                const Rule* r = default_rule_base().find(d.rule_id);
                ASSERT_NE(r, nullptr);
                ASSERT_TRUE(std::find(a.fired_rules.begin(), a.fired_rules.end(), d.rule_id) != a.fired_rules.end());
                ASSERT_TRUE(std::find(r->conclusions.begin(), r->conclusions.end(), Conclusion{d.attribute, d.level}) !=
                            r->conclusions.end());
            }
        }
    }
}

TEST(ForwardChain, RuleStorageOrderIsIrrelevant) {
    std::mt19937_64 rng(10);
    std::vector<Rule> rules = default_rule_base().rules();
    std::vector<Fact> facts;
    for (int i = 0; i < 60; ++i) {
        facts.push_back(Fact{kAllMetrics[static_cast<std::size_t>(i) % 6], double(i * 7 % 40), "c" + std::to_string(i % 4)});
    }
    auto expected = forward_chain(facts, default_rule_base());
    for (int i = 0; i < 20; ++i) {
        std::shuffle(rules.begin(), rules.end(), rng);
        KnowledgeBase shuffled("default", rules);
        EXPECT_TRUE(shuffled.equivalent(default_rule_base()));
        ASSERT_EQ(forward_chain(facts, shuffled), expected);
        ASSERT_EQ(forward_chain(facts, shuffled), forward_chain(facts, shuffled));
    }
}

TEST(ForwardChain, AddingARuleForAnUncoveredBandLeavesOtherValuesAlone) {
    std::vector<Rule> rules{rule("w.lo", Metric::WMC, Condition::interval(0, 4)),
                            rule("w.hi", Metric::WMC, Condition::interval(10, std::nullopt), {{"quality", Level::Low}})};
    KnowledgeBase before("b", rules);
    EXPECT_EQ(before.first_uncovered(Metric::WMC), 5);
    rules.push_back(rule("w.mid", Metric::WMC, Condition::interval(5, 9), {{"quality", Level::Normal}}));
    KnowledgeBase after("b", rules);
    EXPECT_EQ(after.first_uncovered(Metric::WMC), std::nullopt);
    for (int v = 0; v <= 50; ++v) {
        auto a = forward_chain(std::vector<Fact>{{Metric::WMC, double(v), "c"}}, before);
        auto b = forward_chain(std::vector<Fact>{{Metric::WMC, double(v), "c"}}, after);
        if (v < 5 || v > 9) {
            ASSERT_EQ(a, b) << v;
        } else {
            ASSERT_TRUE(a[0].fired_rules.empty());
            ASSERT_EQ(b[0].fired_rules, std::vector<std::string>{"w.mid"});
        }
    }
}

TEST(Serialize, RoundTripsShippedAndGeneratedBases) {
    for (const KnowledgeBase* kb : {&default_rule_base(), &paper_rule_preset()}) {
        KnowledgeBase back = load_rules(serialize_rules(*kb));
        EXPECT_TRUE(back.equivalent(*kb));
        EXPECT_EQ(back.rules(), kb->rules());
        EXPECT_EQ(serialize_rules(back), serialize_rules(*kb));
    }
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        std::vector<Rule> rules;
        std::int64_t lo = 0;
        for (int k = 0; k < 5; ++k) {
            std::int64_t width = std::uniform_int_distribution<int>(0, 6)(rng);
            if (k % 2 == 0) {
                rules.push_back(rule("r" + std::to_string(k), Metric::RFC, Condition::interval(lo, lo + width)));
            } else {
                std::vector<std::int64_t> vs;
                for (std::int64_t v = lo; v <= lo + width; v += 2) {
                    vs.push_back(v);
                }
                rules.push_back(rule("r" + std::to_string(k), Metric::RFC, Condition::values(vs)));
            }
            lo += width + 1;
        }
        KnowledgeBase kb("gen", rules);
        KnowledgeBase back = load_rules(serialize_rules(kb));
        ASSERT_TRUE(back.equivalent(kb));
        ASSERT_EQ(back.name(), "gen");
    }
}

TEST(LoadRuleBase, ByNameOrPath) {
    EXPECT_EQ(load_rule_base("default").size(), 42u);
    EXPECT_EQ(load_rule_base("paper").size(), 3u);
    EXPECT_THROW(load_rule_base("/nonexistent/rules.json"), InputError);
}

TEST(EvaluateProject, ClassScopeFiresSixRules) {
    ProjectMetrics pm =
        ProjectMetrics::from_records("p", {MetricRecord{"moreUnit.actions.CreateTestMethodE", 4, 1, 0, 6, 9, 4}});
    auto a = evaluate_project(pm, default_rule_base(), EvaluationScope::Class);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].scope, "moreUnit.actions.CreateTestMethodE");
    EXPECT_EQ(a[0].fired_rules.size(), 6u);
    EXPECT_EQ(a[0].facts.size(), 6u);
}

TEST(EvaluateProject, ProjectScopeRoundsMeansHalfUp) {
    auto empty = evaluate_project(ProjectMetrics{}, default_rule_base(), EvaluationScope::Project);
    ASSERT_EQ(empty.size(), 1u);
    EXPECT_EQ(empty[0].scope, kProjectScope);
    for (const auto& f : empty[0].facts) {
        EXPECT_EQ(f.value, 0.0);
    }
    EXPECT_EQ(round_half_up(4.5), 5);
    EXPECT_EQ(round_half_up(4.4999), 4);
    EXPECT_EQ(round_half_up(0.0), 0);
    ProjectMetrics pm = ProjectMetrics::from_records(
        "p", {MetricRecord{"a", 5, 0, 0, 0, 0, 0}, MetricRecord{"b", 6, 0, 0, 0, 0, 0}});
    auto a = evaluate_project(pm, default_rule_base(), EvaluationScope::Project);
    EXPECT_EQ(a[0].facts[0].value, 6.0);
    EXPECT_EQ(a[0].fired_rules[0], "WMC.BelowNormal");
}

TEST(EvaluateProject, IdenticalClassesGiveIdenticalAssessments) {
    ProjectMetrics pm = ProjectMetrics::from_records(
        "p", {MetricRecord{"a", 3, 1, 0, 2, 5, 1}, MetricRecord{"b", 3, 1, 0, 2, 5, 1}});
    auto a = evaluate_project(pm, default_rule_base(), EvaluationScope::Class);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[0].derived, a[1].derived);
    EXPECT_EQ(a[0].fired_rules, a[1].fired_rules);
}

TEST(FilterByRanges, TableFiveSelection) {
    RangeSelection sel{{Metric::WMC, Condition::parse("2-5")}, {Metric::LCOM, Condition::parse("0,1,2")}};
    auto parts = filter_by_ranges(moreunit_classes(), sel);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0].metric, Metric::WMC);
    EXPECT_EQ(values(parts[0].in_range), (std::vector<std::uint32_t>{4, 4, 4, 4, 5}));
    EXPECT_EQ(values(parts[0].out_of_range), (std::vector<std::uint32_t>{9, 8}));
    EXPECT_EQ(values(parts[1].in_range), (std::vector<std::uint32_t>{0}));
    EXPECT_EQ(values(parts[1].out_of_range), (std::vector<std::uint32_t>{4, 4, 4, 6, 36, 22}));
    EXPECT_EQ(parts[1].in_range[0].class_name, "moreUnit.elements.JavaProjectFacad");
}

TEST(FilterByRanges, FullCoverAndEmptySelection) {
    auto parts = filter_by_ranges(moreunit_classes(), {{Metric::RFC, Condition::interval(0, std::nullopt)}});
    EXPECT_EQ(parts[0].in_range.size(), 7u);
    EXPECT_TRUE(parts[0].out_of_range.empty());
    EXPECT_THROW(filter_by_ranges(moreunit_classes(), {}), InputError);
}

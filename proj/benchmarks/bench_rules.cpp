#include <benchmark/benchmark.h>

#include "ckeval/inference.hpp"
#include "ckeval/rules.hpp"

using namespace ckeval;

namespace {

void BM_Match(benchmark::State& state) {
    const KnowledgeBase& kb = default_rule_base();
    std::int64_t v = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kb.match(Metric::RFC, static_cast<double>(v++ % 60)));
    }
}
BENCHMARK(BM_Match);

void BM_ForwardChain(benchmark::State& state) {
    std::vector<Fact> facts;
    for (int i = 0; i < state.range(0); ++i) {
        for (Metric m : kAllMetrics) {
            facts.push_back(Fact{m, static_cast<double>((i * 7 + static_cast<int>(index_of(m))) % 40),
                                 "C" + std::to_string(i)});
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward_chain(facts, default_rule_base()));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(facts.size()));
}
BENCHMARK(BM_ForwardChain)->RangeMultiplier(4)->Range(1, 1024);

void BM_LoadDefaultRules(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(load_rules(default_rules_document()));
    }
}
BENCHMARK(BM_LoadDefaultRules);

} // namespace

BENCHMARK_MAIN();

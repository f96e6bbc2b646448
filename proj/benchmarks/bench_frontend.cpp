#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "ckeval/java_lexer.hpp"
#include "ckeval/java_lower.hpp"
#include "ckeval/java_parser.hpp"

using namespace ckeval::java;

namespace {

std::string source(int index, int methods) {
    std::string name = "K" + std::to_string(index);
    std::string s = "package bench;\n\nimport java.util.List;\n\npublic class " + name;
    if (index > 0) {
        s += " extends K" + std::to_string(index - 1);
    }
    s += " {\n    private int count;\n    private List<String> items;\n";
    for (int m = 0; m < methods; ++m) {
        s += "    /** Method " + std::to_string(m) + ". */\n";
        s += "    public int m" + std::to_string(m) + "(int a, String b) {\n";
        s += "        int local = count + a; // running total\n";
        s += "        items.add(b + \"-\" + local);\n";
        s += "        if (local > 10) { return m" + std::to_string((m + 1) % methods) + "(a - 1, b); }\n";
        s += "        return local;\n    }\n";
    }
    return s + "}\n";
}

void BM_Lex(benchmark::State& state) {
    std::string text = source(1, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lex(text));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_Lex)->Range(8, 512);

void BM_Parse(benchmark::State& state) {
    std::string text = source(1, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_source(text, "K1.java"));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_Parse)->Range(8, 512);

void BM_Lower(benchmark::State& state) {
    std::vector<SourceUnit> units;
    for (int i = 0; i < state.range(0); ++i) {
        units.push_back(*parse_source(source(i, 10), "K" + std::to_string(i) + ".java").unit);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(lower_to_model(units, "bench"));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Lower)->RangeMultiplier(4)->Range(4, 256);

} // namespace

BENCHMARK_MAIN();

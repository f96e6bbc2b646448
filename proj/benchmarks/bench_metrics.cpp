#include <benchmark/benchmark.h>

#include "ckeval/metrics.hpp"

using namespace ckeval;

namespace {

// Layered model: class i extends i/4, calls into i-1 and i+1, and uses a
// few of its own fields per method.
ClassModel layered(int classes, int methods, int fields) {
    std::vector<ClassInfo> out;
    for (int i = 0; i < classes; ++i) {
        ClassInfo c;
        c.qualified_name = "bench.C" + std::to_string(i);
        if (i > 0) {
            c.superclass = "bench.C" + std::to_string(i / 4);
        }
        for (int f = 0; f < fields; ++f) {
            c.fields.push_back(FieldInfo{"f" + std::to_string(f), "int", false});
        }
        for (int m = 0; m < methods; ++m) {
            MethodInfo mi;
            mi.name = "m" + std::to_string(m);
            mi.used_fields = {"f" + std::to_string(m % fields), "f" + std::to_string((m * 3 + i) % fields)};
            for (int d : {i - 1, i + 1}) {
                if (d >= 0 && d < classes) {
                    mi.called_methods.insert(MethodRef{"bench.C" + std::to_string(d), "m" + std::to_string(m), 0});
                }
            }
            mi.called_methods.insert(MethodRef{std::string(kUnresolved), "println", 1});
            c.methods.push_back(std::move(mi));
        }
        out.push_back(std::move(c));
    }
    return ClassModel("bench", std::move(out));
}

void BM_ComputeAll(benchmark::State& state) {
    ClassModel model = layered(static_cast<int>(state.range(0)), 12, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_all(model));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ComputeAll)->RangeMultiplier(4)->Range(16, 4096);

void BM_Lcom(benchmark::State& state) {
    ClassModel model = layered(1, static_cast<int>(state.range(0)), 16);
    const ClassInfo& c = model.classes().front();
    for (auto _ : state) {
        benchmark::DoNotOptimize(lcom(c));
    }
}
BENCHMARK(BM_Lcom)->RangeMultiplier(2)->Range(8, 256);

} // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "flipcycles/plabic.hpp"
#include "flipcycles/plabic_complex.hpp"
#include "flipcycles/zonotope.hpp"

using namespace flipcycles;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_EnumerateTilings(benchmark::State& state) {
    const auto spec = zonotope::zonotope_spec(static_cast<int>(state.range(1)), static_cast<int>(state.range(2)));
    for (auto _ : state) benchmark::DoNotOptimize(zonotope::enumerate_tilings(spec, mode(state)).size());
    label(state);
}
BENCHMARK(BM_EnumerateTilings)->Args({0, 7, 2})->Args({1, 7, 2})->Args({0, 7, 3})->Args({1, 7, 3})->Unit(benchmark::kMillisecond);

void BM_ZComplex(benchmark::State& state) {
    const auto g = zonotope::enumerate_tilings(zonotope::zonotope_spec(6, 2));
    for (auto _ : state) benchmark::DoNotOptimize(zonotope::build_z_complex(g, mode(state)).cells.size());
    label(state);
}
BENCHMARK(BM_ZComplex)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EnumeratePlabic(benchmark::State& state) {
    const auto p = combinat::cyclic_decorated(static_cast<int>(state.range(1)), static_cast<int>(state.range(2)));
    for (auto _ : state) benchmark::DoNotOptimize(plabic::enumerate_plabic(p, mode(state)).size());
    label(state);
}
BENCHMARK(BM_EnumeratePlabic)->Args({0, 7, 3})->Args({1, 7, 3})->Args({0, 8, 2})->Args({1, 8, 2})->Unit(benchmark::kMillisecond);

void BM_PlabicComplex(benchmark::State& state) {
    const auto p = combinat::cyclic_decorated(7, 3);
    const auto kind = static_cast<plabic::ComplexKind>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(plabic::build_plabic_complex(p, kind, mode(state)).complex.cells.size());
    label(state);
}
BENCHMARK(BM_PlabicComplex)
    ->Args({0, static_cast<int>(plabic::ComplexKind::X)})
    ->Args({1, static_cast<int>(plabic::ComplexKind::X)})
    ->Args({0, static_cast<int>(plabic::ComplexKind::Y)})
    ->Args({1, static_cast<int>(plabic::ComplexKind::Y)})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

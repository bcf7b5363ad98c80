#include <benchmark/benchmark.h>

#include "qovoid/ovoid.hpp"

using namespace qovoid;

static void EnumeratePoints(benchmark::State& state) {
    const FieldCtx F(std::uint32_t(state.range(0)), std::uint32_t(state.range(1)));
    for (auto _ : state) {
        const PointSet pts = PointSet::enumerate(F);
        benchmark::DoNotOptimize(pts.size());
    }
    state.SetLabel("q=" + std::to_string(F.q()));
}
BENCHMARK(EnumeratePoints)->Args({13, 1})->Args({17, 1})->Args({29, 1})
    ->Unit(benchmark::kMillisecond);

static void EnumerateLines(benchmark::State& state) {
    const FieldCtx F(std::uint32_t(state.range(0)), std::uint32_t(state.range(1)));
    const PointSet pts = PointSet::enumerate(F);
    const unsigned workers = unsigned(state.range(2));
    for (auto _ : state) {
        const LineSet lines = LineSet::enumerate(F, pts, workers);
        benchmark::DoNotOptimize(lines.size());
    }
    state.SetLabel("q=" + std::to_string(F.q()) + " workers=" + std::to_string(workers));
}
BENCHMARK(EnumerateLines)
    ->Args({13, 1, 1})
    ->Args({17, 1, 1})
    ->Unit(benchmark::kMillisecond);

static void EnumerateLinesQ25(benchmark::State& state) {
    const FieldCtx F(5, 2);
    const PointSet pts = PointSet::enumerate(F);
    const unsigned workers = unsigned(state.range(0));
    for (auto _ : state) {
        const LineSet lines = LineSet::enumerate(F, pts, workers);
        benchmark::DoNotOptimize(lines.size());
    }
    state.SetLabel("q=25 workers=" + std::to_string(workers));
}
BENCHMARK(EnumerateLinesQ25)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void VerifyOvoid(benchmark::State& state) {
    const FieldCtx F(std::uint32_t(state.range(0)), std::uint32_t(state.range(1)));
    const PointSet pts = PointSet::enumerate(F);
    const LineSet lines = LineSet::enumerate(F, pts, 2);
    const OvoidSet M = construct_M(F, pts, find_ab(F));
    for (auto _ : state) {
        const OvoidReport rep =
            verify_m_ovoid(F, pts, M.members, (F.q() - 1) / 2, lines, 1);
        benchmark::DoNotOptimize(rep.pass);
    }
    state.SetLabel("q=" + std::to_string(F.q()));
}
BENCHMARK(VerifyOvoid)->Args({13, 1})->Args({17, 1})->Unit(benchmark::kMillisecond);

static void OrbitDecompositionBench(benchmark::State& state) {
    const FieldCtx F(std::uint32_t(state.range(0)), std::uint32_t(state.range(1)));
    const PointSet pts = PointSet::enumerate(F);
    for (auto _ : state) {
        const OrbitDecomposition dec = orbit_decomposition(F, pts);
        benchmark::DoNotOptimize(dec.orbits.size());
    }
    state.SetLabel("q=" + std::to_string(F.q()));
}
BENCHMARK(OrbitDecompositionBench)->Args({13, 1})->Args({17, 1})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

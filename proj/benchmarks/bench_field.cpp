#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qovoid/gf.hpp"

using namespace qovoid;

namespace {

std::vector<FqElem> random_elems(const FieldCtx& F, std::size_t n, bool nonzero) {
    std::mt19937 rng(42);
    std::uniform_int_distribution<std::uint32_t> dist(nonzero ? 1 : 0, F.q() - 1);
    std::vector<FqElem> v(n);
    for (auto& e : v) e = FqElem(dist(rng));
    return v;
}

}  // namespace

static void FqMul(benchmark::State& state) {
    const FieldCtx F(std::uint32_t(state.range(0)), std::uint32_t(state.range(1)));
    const std::vector<FqElem> xs = random_elems(F, 4096, false);
    std::size_t i = 0;
    for (auto _ : state) {
        const FqElem r = F.mul(xs[i & 4095], xs[(i + 1) & 4095]);
        benchmark::DoNotOptimize(r);
        ++i;
    }
}
BENCHMARK(FqMul)->Args({29, 1})->Args({5, 2})->Args({13, 2});

static void FqInv(benchmark::State& state) {
    const FieldCtx F(std::uint32_t(state.range(0)), std::uint32_t(state.range(1)));
    const std::vector<FqElem> xs = random_elems(F, 4096, true);
    std::size_t i = 0;
    for (auto _ : state) {
        const FqElem r = F.inv(xs[i & 4095]);
        benchmark::DoNotOptimize(r);
        ++i;
    }
}
BENCHMARK(FqInv)->Args({29, 1});

static void Fq2Mul(benchmark::State& state) {
    const FieldCtx F(std::uint32_t(state.range(0)), std::uint32_t(state.range(1)));
    const std::vector<FqElem> xs = random_elems(F, 4096, false);
    std::size_t i = 0;
    for (auto _ : state) {
        const Fq2Elem a{xs[i & 4095], xs[(i + 1) & 4095]};
        const Fq2Elem b{xs[(i + 2) & 4095], xs[(i + 3) & 4095]};
        benchmark::DoNotOptimize(F.mul(a, b));
        ++i;
    }
}
BENCHMARK(Fq2Mul)->Args({29, 1})->Args({5, 2});

static void Fq2Norm(benchmark::State& state) {
    const FieldCtx F(std::uint32_t(state.range(0)), std::uint32_t(state.range(1)));
    const std::vector<FqElem> xs = random_elems(F, 4096, false);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(F.norm({xs[i & 4095], xs[(i + 1) & 4095]}));
        ++i;
    }
}
BENCHMARK(Fq2Norm)->Args({29, 1});

static void FieldConstruction(benchmark::State& state) {
    for (auto _ : state) {
        const FieldCtx F(std::uint32_t(state.range(0)), std::uint32_t(state.range(1)));
        benchmark::DoNotOptimize(F.omega());
    }
}
BENCHMARK(FieldConstruction)->Args({29, 1})->Args({5, 2})->Args({7, 2})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

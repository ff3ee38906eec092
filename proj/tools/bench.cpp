#include "twl/distal.hpp"
#include "twl/generator.hpp"
#include "twl/patterns.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

twl::BitMatrix random_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    twl::BitMatrix mat(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rng() & 1) mat.set(i, j, true);
    return mat;
}

void bm_corner_matrix(benchmark::State& state) {
    auto m = random_matrix(static_cast<std::size_t>(state.range(0)),
                           static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(twl::corner_matrix(m));
}

void bm_corner_matrix_serial(benchmark::State& state) {
    auto m = random_matrix(static_cast<std::size_t>(state.range(0)),
                           static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(twl::corner_matrix_serial(m));
}

void bm_grid_minor(benchmark::State& state) {
    auto m = random_matrix(24, 24, 11);
    for (auto _ : state) benchmark::DoNotOptimize(twl::max_grid_minor(m, 6));
}

void bm_grid_minor_serial(benchmark::State& state) {
    auto m = random_matrix(24, 24, 11);
    for (auto _ : state) benchmark::DoNotOptimize(twl::max_grid_minor_serial(m, 6));
}

struct RegFixture {
    twl::Graph g;
    std::vector<std::vector<std::size_t>> parts;
    RegFixture() {
        auto inst = twl::gen_certified(2, 150, 3);
        g = inst.graph;
        auto reg = twl::regularity(g, 0.1, 5);
        parts = reg.parts;
    }
};

void bm_verify_regularity(benchmark::State& state) {
    static RegFixture fx;
    for (auto _ : state)
        benchmark::DoNotOptimize(twl::verify_regularity(fx.g, fx.parts, 0.1));
}

void bm_verify_regularity_serial(benchmark::State& state) {
    static RegFixture fx;
    for (auto _ : state)
        benchmark::DoNotOptimize(twl::verify_regularity_serial(fx.g, fx.parts, 0.1));
}

BENCHMARK(bm_corner_matrix)->Arg(256)->Arg(1024);
BENCHMARK(bm_corner_matrix_serial)->Arg(256)->Arg(1024);
BENCHMARK(bm_grid_minor);
BENCHMARK(bm_grid_minor_serial);
BENCHMARK(bm_verify_regularity);
BENCHMARK(bm_verify_regularity_serial);

} // namespace

BENCHMARK_MAIN();

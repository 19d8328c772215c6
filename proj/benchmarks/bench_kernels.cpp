#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ltlab/local_time.hpp"
#include "ltlab/lt_integrals.hpp"
#include "ltlab/simulate.hpp"
#include "ltlab/variation.hpp"

namespace {

ltlab::Path brownian_path(std::size_t n_steps) {
    const auto grid = ltlab::make_time_grid(1.0, n_steps);
    return ltlab::simulate(ltlab::Brownian{}, grid, ltlab::SeedPolicy{1, 0});
}

ltlab::SpaceGrid covering_grid(const ltlab::Path& p, double width) {
    const auto [lo, hi] = ltlab::path_range(p);
    return ltlab::SpaceGrid::snapped(lo, hi, width, 4);
}

}  // namespace

static void BM_SimulateBrownian(benchmark::State& state) {
    const auto grid = ltlab::make_time_grid(1.0, static_cast<std::size_t>(state.range(0)));
    std::uint64_t id = 0;
    for (auto _ : state) {
        auto p = ltlab::simulate(ltlab::Brownian{}, grid, ltlab::SeedPolicy{1, id++});
        benchmark::DoNotOptimize(p.values.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateBrownian)->RangeMultiplier(4)->Range(1 << 12, 1 << 18);

static void BM_OccupationLocalTime(benchmark::State& state) {
    const auto path = brownian_path(static_cast<std::size_t>(state.range(0)));
    const auto space = covering_grid(path, 0x1.0p-9);
    for (auto _ : state) {
        auto field = ltlab::occupation_local_time(path, space, 1.0);
        benchmark::DoNotOptimize(field.values.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OccupationLocalTime)->RangeMultiplier(4)->Range(1 << 12, 1 << 18);

static void BM_DenseSheet(benchmark::State& state) {
    const auto path = brownian_path(static_cast<std::size_t>(state.range(0)));
    const auto space = covering_grid(path, 0x1.0p-9);
    for (auto _ : state) {
        auto sheet = ltlab::dense_local_time_sheet(path, space, 1.0);
        benchmark::DoNotOptimize(sheet.increments().data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DenseSheet)->RangeMultiplier(4)->Range(1 << 12, 1 << 16);

static void BM_LhsForwardStepCombo(benchmark::State& state) {
    const auto path = brownian_path(1 << 16);
    std::vector<double> levels, weights;
    for (int i = 0; i < state.range(0); ++i) {
        levels.push_back(-2.0 + 4.0 * i / static_cast<double>(state.range(0)));
        weights.push_back(1.0 + (i % 3));
    }
    const auto f = ltlab::TestFunction::step_combo(levels, weights);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ltlab::lhs_forward(f, path, 0x1.0p-7, 1.0));
    }
}
BENCHMARK(BM_LhsForwardStepCombo)->RangeMultiplier(4)->Range(1, 256);

static void BM_PVariation(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z;
    std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
    double x = 0.0;
    for (auto& v : xs) v = (x += z(rng));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ltlab::p_variation(xs, 1.5));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PVariation)->RangeMultiplier(2)->Range(64, 2048)->Complexity(benchmark::oNSquared);

BENCHMARK_MAIN();

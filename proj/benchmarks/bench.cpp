#include <benchmark/benchmark.h>

#include <vector>

#include "wpt/config.hpp"
#include "wpt/kelvin.hpp"
#include "wpt/sweep.hpp"

namespace {

void BM_KelvinSeries(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(wpt::kelvin(8.0));
    }
}
BENCHMARK(BM_KelvinSeries);

void BM_KelvinAsymptotic(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(wpt::kelvin(32.0));
    }
}
BENCHMARK(BM_KelvinAsymptotic);

void BM_MutualInductancePair(benchmark::State& state) {
    const std::vector<double> a{0.025};
    const std::vector<double> b{0.050};
    const double d = state.range(0) * 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(wpt::mutual_inductance(a, b, d));
    }
}
BENCHMARK(BM_MutualInductancePair)->Arg(2)->Arg(20)->Arg(200);

void BM_MutualInductanceSpirals(benchmark::State& state) {
    const wpt::RunConfig cfg = wpt::symmetric_preset();
    const auto txc = wpt::turn_radii(cfg.txc);
    const auto ic = wpt::turn_radii(cfg.ic);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wpt::mutual_inductance(txc, ic, 0.075));
    }
}
BENCHMARK(BM_MutualInductanceSpirals);

void BM_S21SolveOnly(benchmark::State& state) {
    const wpt::SystemConfig sys = wpt::build_system(wpt::symmetric_preset());
    const wpt::CouplingSet couplings = wpt::compute_couplings(sys);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wpt::s21_at(sys, couplings, sys.f0));
    }
}
BENCHMARK(BM_S21SolveOnly);

void BM_HeatmapCell(benchmark::State& state) {
    const wpt::RunConfig cfg = wpt::symmetric_preset();
    const wpt::SystemConfig sys = wpt::build_system(cfg);
    const std::vector<double> od{0.100};
    const std::vector<double> loc{0.060};
    for (auto _ : state) {
        benchmark::DoNotOptimize(wpt::size_location_heatmap(sys, cfg.ic, od, loc));
    }
}
BENCHMARK(BM_HeatmapCell);

}  // namespace

BENCHMARK_MAIN();

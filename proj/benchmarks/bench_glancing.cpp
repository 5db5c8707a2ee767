#include <benchmark/benchmark.h>

#include "glancing/ddp.hpp"
#include "glancing/harness.hpp"
#include "glancing/models.hpp"
#include "glancing/propagator.hpp"
#include "glancing/specialfn.hpp"
#include "glancing/znt.hpp"

namespace {

using namespace glancing;

void BM_Propagate(benchmark::State& state) {
    const DiabaticModel model(Superparabolic{static_cast<int>(state.range(0)), 1.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(model).probability);
    }
}
BENCHMARK(BM_Propagate)->Arg(2)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_PropagateDiabatic(benchmark::State& state) {
    const DiabaticModel model(Superparabolic{static_cast<int>(state.range(0)), 1.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(model, {}, Basis::Diabatic).probability);
    }
}
BENCHMARK(BM_PropagateDiabatic)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ArgGammaImag(benchmark::State& state) {
    const double y = static_cast<double>(state.range(0)) / 100.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specialfn::arg_gamma_imag(y));
    }
}
BENCHMARK(BM_ArgGammaImag)->Arg(1)->Arg(100)->Arg(10000)->Arg(100000);

void BM_DdpProbability(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    double alpha = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ddp::ddp_probability(n, alpha));
        alpha = alpha < 3.0 ? alpha * 1.01 : 0.1;
    }
}
BENCHMARK(BM_DdpProbability)->Arg(2)->Arg(10)->Arg(40);

void BM_ResiduePrefactor(benchmark::State& state) {
    const DiabaticModel model(Superparabolic{6, 1.0});
    const auto zeros = ddp::zero_points(6, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ddp::residue_prefactor(model, zeros.front().value));
    }
}
BENCHMARK(BM_ResiduePrefactor);

void BM_ZntDoubleCrossing(benchmark::State& state) {
    double alpha = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(znt::superparabolic_double_crossing(6, alpha));
        alpha = alpha < 3.0 ? alpha * 1.01 : 0.1;
    }
}
BENCHMARK(BM_ZntDoubleCrossing);

void BM_FitSynthetic(benchmark::State& state) {
    const znt::AdiabaticCurves curves{[](double t) { return -1.0 - (t + 0.4) * (t + 0.4); },
                                      [](double t) { return 1.0 + (t - 0.5) * (t - 0.5); }, -3.0,
                                      3.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(znt::fit_parameters(curves).a_sq);
    }
}
BENCHMARK(BM_FitSynthetic)->Unit(benchmark::kMicrosecond);

void BM_FigureSweep(benchmark::State& state) {
    harness::SweepConfig config;
    config.N_values = {static_cast<int>(state.range(0))};
    config.points = 300;
    config.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(harness::run_sweep(config).size());
    }
}
BENCHMARK(BM_FigureSweep)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond)->Iterations(1);

} // namespace

BENCHMARK_MAIN();

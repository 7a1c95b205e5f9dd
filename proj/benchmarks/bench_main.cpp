#include <benchmark/benchmark.h>

#include "hivsde/ensemble.hpp"
#include "hivsde/equilibria.hpp"
#include "hivsde/integrators.hpp"
#include "hivsde/thresholds.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace hivsde;

void BM_R0Stochastic(benchmark::State& state) {
    const auto p = testing::indonesia();
    const auto n = NoiseIntensities::uniform(0.05);
    for (auto _ : state) benchmark::DoNotOptimize(r0_stochastic(p, n));
}
BENCHMARK(BM_R0Stochastic);

void BM_EndemicEquilibrium(benchmark::State& state) {
    const auto p = testing::indonesia();
    for (auto _ : state) benchmark::DoNotOptimize(endemic_equilibrium(p));
}
BENCHMARK(BM_EndemicEquilibrium);

void BM_SdeStep(benchmark::State& state) {
    const auto p = testing::indonesia();
    const auto n = NoiseIntensities::uniform(0.05);
    const State x = testing::published_endemic();
    const auto ctx = TruncationContext::make(x, 0.01);
    NormalStream rng(1);
    Vec5 x_bar = x.to_array();
    State x_trunc = x;
    for (auto _ : state) {
        const auto step = sde_step(p, n, x_bar, x_trunc, 0.01, ctx, rng.next());
        x_bar = step.x_bar;
        x_trunc = step.nptem;
        benchmark::DoNotOptimize(x_bar);
    }
}
BENCHMARK(BM_SdeStep);

void BM_Rk4Year(benchmark::State& state) {
    const auto p = testing::indonesia();
    StepConfig cfg;
    cfg.scheme = Scheme::kRk4;
    cfg.t_end = 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(rk4_simulate(p, testing::indonesia_x0(), cfg));
}
BENCHMARK(BM_Rk4Year);

void BM_PptemCentury(benchmark::State& state) {
    const auto p = testing::indonesia();
    const auto n = NoiseIntensities::uniform(0.05);
    StepConfig cfg;
    cfg.t_end = 100.0;
    for (auto _ : state) benchmark::DoNotOptimize(sde_simulate(p, n, testing::indonesia_x0(), cfg));
}
BENCHMARK(BM_PptemCentury)->Unit(benchmark::kMillisecond);

void BM_SmallEnsemble(benchmark::State& state) {
    const auto p = testing::indonesia();
    const auto n = NoiseIntensities::uniform(0.05);
    EnsembleConfig cfg;
    cfg.n_paths = 16;
    cfg.step.t_end = 10.0;
    cfg.thin = 100;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_ensemble(p, n, testing::indonesia_x0(), cfg, static_cast<std::size_t>(state.range(0))));
    }
}
BENCHMARK(BM_SmallEnsemble)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

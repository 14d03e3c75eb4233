#include <benchmark/benchmark.h>

#include "ringcarl/dynamics.hpp"
#include "ringcarl/meanfield.hpp"
#include "ringcarl/simulate.hpp"

using namespace ringcarl;

namespace {

SystemParams bench_params(int n) {
    SystemParams p;
    p.n_particles = n;
    p.u0 = -3.0 / n;
    p.kappa = 1.0;
    p.delta_c = -3.5;
    p.eta = 12.0;
    p.kb_t = 1.0;
    p.mass = 100.0;
    return p;
}

void BM_steady_fields(benchmark::State& state) {
    const SystemParams p = bench_params(200);
    const Bunching r{Complex(0.4, 0.2)};
    for (auto _ : state)
        benchmark::DoNotOptimize(dynamics::steady_fields(p, r));
}
BENCHMARK(BM_steady_fields);

void BM_iterate_step(benchmark::State& state) {
    const SystemParams p = bench_params(2000);
    const Bunching r{Complex(0.3, 0.0)};
    meanfield::IterationOptions opt;
    opt.grid = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(meanfield::iterate_step(p, r, opt));
}
BENCHMARK(BM_iterate_step)->Arg(256)->Arg(1024)->Arg(4096);

void BM_rk4_step(benchmark::State& state) {
    const SystemParams p = bench_params(static_cast<int>(state.range(0)));
    auto s = simulate::init_ensemble(p, 0.0, 1);
    s.fields.a_plus = 2.0;
    s.fields.a_minus = Complex(0.3, 0.1);
    for (auto _ : state) {
        s = simulate::step_rk4(s, p, 0.005);
        benchmark::DoNotOptimize(s.x.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_rk4_step)->Arg(200)->Arg(1000)->Arg(3000);

void BM_ensemble_bunching(benchmark::State& state) {
    const SystemParams p = bench_params(static_cast<int>(state.range(0)));
    const auto s = simulate::init_ensemble(p, 0.0, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate::ensemble_bunching(s, p));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ensemble_bunching)->Arg(1000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <cmath>

#include "smb/noise.hpp"
#include "smb/semigroup.hpp"
#include "smb/solver.hpp"

namespace {

using namespace smb;

SystemState bump_state(const Grid1D& g) {
    SystemState s = SystemState::zero(g);
    for (int j = 0; j < g.n; ++j) {
        const double x = g.node(j);
        s.u1.values[static_cast<std::size_t>(j)] = x * std::exp(-x * x);
        s.u2.values[static_cast<std::size_t>(j)] = -0.5 * x * std::exp(-x * x);
    }
    return s;
}

void BM_Semigroup(benchmark::State& state) {
    const Grid1D g = Grid1D::with_length(static_cast<int>(state.range(0)), 4.0);
    const SpectralLaplacian sl(g, 1.0, 1.0);
    PhaseProfile p = bump_state(g).u1;
    for (auto _ : state) {
        p = sl.apply_semigroup(p, 1e-4);
        benchmark::DoNotOptimize(p.values.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Semigroup)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_ApplyKernel(benchmark::State& state) {
    const NoiseKernel k = NoiseKernel::gaussian(0.3, -6.0, 6.0, static_cast<int>(state.range(0)));
    GaussianStream rng(1);
    const NoiseIncrement w = draw_increment(k, 1e-3, rng);
    std::vector<double> pts;
    for (int i = 0; i < 200; ++i) pts.push_back(-4.0 + 0.04 * i);
    for (auto _ : state) {
        auto out = apply_kernel(k, w, pts);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_ApplyKernel)->RangeMultiplier(2)->Range(32, 256);

void BM_SolverStep(benchmark::State& state) {
    const Grid1D g = Grid1D::with_length(static_cast<int>(state.range(0)), 4.0);
    const ModelCoefficients mc = ModelCoefficients::stefan_multiplicative(1.0, 0.3);
    const NoiseKernel k = NoiseKernel::gaussian(0.3, -7.5, 7.5, 64);
    const SpectralLaplacian slp(g, mc.eta_plus, mc.c);
    const SpectralLaplacian slm(g, mc.eta_minus, mc.c);
    GaussianStream rng(2);
    SystemState s = bump_state(g);
    for (auto _ : state) {
        s = step(slp, slm, mc, k, s, 1e-4, rng);
        benchmark::DoNotOptimize(s.xstar);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolverStep)->RangeMultiplier(2)->Range(64, 512)->Complexity();

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "extrobin/ball.hpp"
#include "extrobin/effective1d.hpp"
#include "extrobin/pde2d.hpp"
#include "extrobin/specfun.hpp"

using namespace extrobin;

static void BM_BesselRatio(benchmark::State& state) {
    const Order nu(0.5 * static_cast<double>(state.range(0)));
    double x = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel_ratio_f(nu, x));
        x = x < 100.0 ? x * 1.3 : 0.01;
    }
}
BENCHMARK(BM_BesselRatio)->Arg(0)->Arg(1)->Arg(2)->Arg(10);

static void BM_Lambda1Ball(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const BallProblem p{d, 1.0, critical_coupling(d, 1.0) - 3.0};
    for (auto _ : state) benchmark::DoNotOptimize(lambda1_ball(p).lambda1);
}
BENCHMARK(BM_Lambda1Ball)->Arg(2)->Arg(3)->Arg(6);

static void BM_MinRayleigh(benchmark::State& state) {
    const auto w = ball_weight(3, 1.0);
    TruncationConfig cfg;
    cfg.n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(min_rayleigh(w, -2.0, cfg).lambda);
}
BENCHMARK(BM_MinRayleigh)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_Pde2dSolve(benchmark::State& state) {
    GridConfig g;
    g.n_s = static_cast<int>(state.range(0));
    g.n_t = static_cast<int>(state.range(1));
    g.T = 8.0;
    const auto curve = curves::ellipse(1.5, 1.0);
    for (auto _ : state) {
        const auto pair = assemble(curve, -1.0, g);
        benchmark::DoNotOptimize(lowest_eigenpair(pair, default_shift(pair.max_curvature, -1.0)).lambda);
    }
}
BENCHMARK(BM_Pde2dSolve)->Args({32, 50})->Args({64, 100})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

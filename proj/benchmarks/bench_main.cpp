#include "clamped_te/beyn.hpp"
#include "clamped_te/bie.hpp"
#include "clamped_te/recover.hpp"
#include "clamped_te/specfun.hpp"

#include <benchmark/benchmark.h>

namespace ct = clamped_te;

static void BM_Hankel01(benchmark::State& state) {
    ct::cplx z{2.7, 0.3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(ct::specfun::hankel1_01(z));
        z += ct::cplx{1e-9, 0.0};
    }
}
BENCHMARK(BM_Hankel01);

static void BM_ModifiedHankel01(benchmark::State& state) {
    ct::cplx z{0.0, 2.7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(ct::specfun::hankel1_01(z));
        z += ct::cplx{0.0, 1e-9};
    }
}
BENCHMARK(BM_ModifiedHankel01);

static void BM_AssembleLayers(benchmark::State& state) {
    const auto g = ct::make_grid(ct::BoundaryCurve::ellipse(1.0, 0.8), static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ct::assemble_layers(g, ct::cplx{2.5, 0.1}));
}
BENCHMARK(BM_AssembleLayers)->Arg(60)->Arg(120)->Arg(240)->Unit(benchmark::kMillisecond);

static void BM_NepEvaluate(benchmark::State& state) {
    const ct::NepOperator op(ct::make_grid(ct::BoundaryCurve::peanut(), static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(op.evaluate(ct::cplx{3.0, 0.2}));
}
BENCHMARK(BM_NepEvaluate)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

static void BM_BeynOneContour(benchmark::State& state) {
    const ct::NepOperator op(ct::make_grid(ct::BoundaryCurve::circle(1.0), 120));
    ct::ContourSpec c;
    c.center = 1.6;
    c.radius = 0.2;
    for (auto _ : state) benchmark::DoNotOptimize(ct::beyn_solve(op.as_problem(), c));
}
BENCHMARK(BM_BeynOneContour)->Unit(benchmark::kMillisecond);

static void BM_FarFieldMatrix(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ct::farfield_matrix(ct::BoundaryCurve::peanut(), 3.1));
}
BENCHMARK(BM_FarFieldMatrix)->Unit(benchmark::kMillisecond);

static void BM_TikhonovMorozov(benchmark::State& state) {
    const auto f = ct::add_noise(ct::farfield_matrix(ct::BoundaryCurve::circle(1.0), 2.0), 0.02, 7);
    const ct::FarFieldSolver s(f);
    const auto phi = s.rhs({0.1, -0.2});
    for (auto _ : state) benchmark::DoNotOptimize(s.solve(phi));
}
BENCHMARK(BM_TikhonovMorozov)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();

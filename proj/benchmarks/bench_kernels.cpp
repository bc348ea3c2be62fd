#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "prandtl/crocco_solver.hpp"
#include "prandtl/diagnostics.hpp"
#include "prandtl/parallel.hpp"
#include "prandtl/physical_solver.hpp"
#include "prandtl/scenarios.hpp"

using namespace prandtl;

static void BM_Tridiagonal(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Tridiagonal sys(n);
    for (std::size_t k = 0; k < n; ++k) {
        sys.lower[k] = -1.0;
        sys.diag[k] = 2.5;
        sys.upper[k] = -1.0;
        sys.rhs[k] = std::sin(0.01 * static_cast<double>(k));
    }
    std::vector<double> x(n);
    for (auto _ : state) {
        solve_tridiagonal(sys, x);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Tridiagonal)->Arg(129)->Arg(513)->Arg(4097);

// One physical step on the long-plate grid; the argument is the worker cap.
static void BM_StepPhysical(benchmark::State& state) {
    set_thread_count(static_cast<int>(state.range(0)));
    const auto s = example_4_1(3.0);
    const PhysicalSetup setup{PhysicalGrid(s.model, 64, 129, 10.0, 1.0, 2e-7), s.model, s.u1, 1e-3};
    const auto st = init_physical(setup, s.u0);
    for (auto _ : state) benchmark::DoNotOptimize(step_physical(st, setup, setup.grid.dt()));
    set_thread_count(0);
}
BENCHMARK(BM_StepPhysical)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);

static void BM_StepCrocco(benchmark::State& state) {
    set_thread_count(static_cast<int>(state.range(0)));
    const auto s = example_4_1(3.0);
    const CroccoGrid g(s.model.length(), 64, 129, 2.0);
    const CroccoSetup setup{g, s.model, s.w1, crocco_time_step(s.model, g, 2e-7), 2};
    const auto st = init_crocco(s.w0, setup);
    for (auto _ : state) benchmark::DoNotOptimize(step_crocco(st, setup, setup.dt));
    set_thread_count(0);
}
BENCHMARK(BM_StepCrocco)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);

static void BM_LyapunovG(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto xi = uniform_nodes(0.0, 1.0, n);
    const auto eta = uniform_nodes(0.0, 1.0, n);
    Field2D w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w(i, j) = 1.0 - eta[j];
    for (auto _ : state) benchmark::DoNotOptimize(lyapunov_G(w, xi, eta));
}
BENCHMARK(BM_LyapunovG)->Arg(129)->Arg(513)->Unit(benchmark::kMicrosecond);

static void BM_ConditionIntegral(benchmark::State& state) {
    const auto s = example_4_1(3.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(condition_1_10(s.u0, s.dudy0, s.model.length(), s.condition_y_cut, s.breakpoints));
}
BENCHMARK(BM_ConditionIntegral)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

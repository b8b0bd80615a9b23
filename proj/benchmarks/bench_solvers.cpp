#include <benchmark/benchmark.h>

#include "fie23/adaptive.hpp"
#include "fie23/filters.hpp"
#include "fie23/newton.hpp"
#include "fie23/problems.hpp"
#include "fie23/steppers.hpp"

namespace {

void BM_IePrePost3Model(benchmark::State& state) {
    const fie23::ProblemSpec spec = fie23::model_problem(1.0);
    const double dt = spec.t_end / static_cast<double>(state.range(0));
    const fie23::SolverConfig cfg = spec.config(1.0, dt);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fie23::solve_ie_pre_post_3(spec.problem, cfg, spec.initial_state));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IePrePost3Model)->Arg(200)->Arg(2560);

void BM_FilteredIE23(benchmark::State& state, fie23::ProblemSpec spec, double tol, double dt0) {
    const fie23::SolverConfig cfg = spec.config(tol, dt0);
    std::size_t steps = 0;
    for (auto _ : state) {
        const fie23::AdaptiveRun run = fie23::solve_filtered_ie23(spec.problem, cfg, spec.initial_state);
        steps = run.stats.accepted + run.stats.rejected;
        benchmark::DoNotOptimize(run.trajectory.final_state().data());
    }
    state.counters["attempts"] = static_cast<double>(steps);
}
BENCHMARK_CAPTURE(BM_FilteredIE23, model, fie23::model_problem(1.0), 2.5e-4, 1e-2);
BENCHMARK_CAPTURE(BM_FilteredIE23, quasi_periodic, fie23::quasi_periodic_problem(), 7.5e-3, 1e-2);
BENCHMARK_CAPTURE(BM_FilteredIE23, van_der_pol_10, fie23::van_der_pol_problem(10.0), 1e-2, 1e-3)
    ->Unit(benchmark::kMillisecond);

void BM_BetaCoeff(benchmark::State& state) {
    double k = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fie23::beta_coeff(k, 0.02, 0.01, 0.005));
        k = k == 0.01 ? 0.02 : 0.01;
    }
}
BENCHMARK(BM_BetaCoeff);

void BM_NewtonStage(benchmark::State& state) {
    const fie23::ProblemSpec spec = fie23::van_der_pol_problem(100.0);
    const fie23::NewtonSettings newton{};
    const fie23::State y = spec.initial_state;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fie23::implicit_euler_stage(spec.problem, 1e-3, 1e-3, y, y, newton));
    }
}
BENCHMARK(BM_NewtonStage);

}  // namespace

BENCHMARK_MAIN();

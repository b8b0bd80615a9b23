#include "fie23/adaptive.hpp"
#include "fie23/errors.hpp"
#include "fie23/filters.hpp"
#include "fie23/problems.hpp"
#include "fie23/steppers.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fie23;
using fie23::testing::exact_window;
using fie23::testing::linear_problem;
using fie23::testing::scalar;
using fie23::testing::time_only_problem;
using fie23::testing::zero_problem;

namespace {

SolverConfig unit_config(double tol, double dt0) {
    SolverConfig cfg;
    cfg.tol = tol;
    cfg.dt0 = dt0;
    return cfg;
}

HistoryWindow window_of(const Trajectory& tr, std::size_t last) {
    std::vector<TimedState> pts;
    for (std::size_t i = last - 3; i <= last; ++i) pts.push_back({tr.times[i], tr.states[i]});
    return HistoryWindow::from_points(pts);
}

bool is_power_of_two(double x) {
    int e = 0;
    return std::frexp(x, &e) == 0.5;
}

}  // namespace

TEST(Classify, Branches) {
    EXPECT_EQ(classify(2e-3, 1.0, 1e-3, 5), Verdict::Halve);
    EXPECT_EQ(classify(1e-3, 1.0, 1e-3, 5), Verdict::Accept);
    EXPECT_EQ(classify(1e-3 / 32, 1.0, 1e-3, 5), Verdict::Accept);
    EXPECT_EQ(classify(1e-3 / 33, 1.0, 1e-3, 5), Verdict::AcceptAndDouble);
    EXPECT_EQ(classify(0.0, 1.0, 1e-3, 5), Verdict::AcceptAndDouble);
    EXPECT_EQ(classify(std::nan(""), 1.0, 1e-3, 5), Verdict::Halve);
    EXPECT_EQ(classify(1e-3 / 3, 1.0, 1e-3, 1), Verdict::AcceptAndDouble);
    EXPECT_EQ(to_string(Verdict::AcceptAndDouble), "accept-and-double");
}

TEST(AttemptStep, ZeroRhsDoubles) {
    const HistoryWindow w = bootstrap(zero_problem(), 0.0, scalar(1.0), 0.1);
    const StepAttempt a = attempt_step(zero_problem(), w, 0.1, unit_config(1e-12, 0.1));
    EXPECT_EQ(a.y_second[0], 1.0);
    EXPECT_EQ(a.y_third[0], 1.0);
    EXPECT_EQ(a.est, 0.0);
    EXPECT_EQ(a.verdict, Verdict::AcceptAndDouble);
}

TEST(AttemptStep, TinyToleranceHalves) {
    const HistoryWindow w = bootstrap(linear_problem(1.0), 0.0, scalar(1.0), 0.1);
    const StepAttempt a = attempt_step(linear_problem(1.0), w, 0.1, unit_config(1e-12, 0.1));
    EXPECT_GT(a.est, 1e-12 * 0.1);
    EXPECT_EQ(a.verdict, Verdict::Halve);
    EXPECT_FALSE(a.failure);
}

TEST(AttemptStep, CubicWithExactHistoryIsThirdOrderExact) {
    const OdeProblem p = time_only_problem([](double t) { return 3 * t * t; });
    const HistoryWindow w = exact_window([](double t) { return t * t * t; }, 0.0, {0.1, 0.1, 0.1});
    const StepAttempt a = attempt_step(p, w, 0.1, unit_config(1e-6, 0.1));
    EXPECT_NEAR(a.y_third[0], 0.4 * 0.4 * 0.4, 1e-14);
    EXPECT_NEAR(a.y_second[0], 0.069, 1e-14);
    EXPECT_NEAR(a.est, 0.005, 1e-14);
    EXPECT_EQ(a.verdict, Verdict::Halve);
}

TEST(AttemptStep, QuadraticWithExactHistoryDoubles) {
    const OdeProblem p = time_only_problem([](double t) { return 2 * t; });
    const HistoryWindow w = exact_window([](double t) { return t * t; }, 0.0, {0.1, 0.1, 0.1});
    const StepAttempt a = attempt_step(p, w, 0.1, unit_config(1e-6, 0.1));
    EXPECT_NEAR(a.y_second[0], 0.16, 1e-14);
    EXPECT_NEAR(a.y_third[0], 0.16, 1e-14);
    EXPECT_LT(a.est, 1e-14);
    EXPECT_EQ(a.verdict, Verdict::AcceptAndDouble);
}

TEST(AttemptStep, NewtonFailureBecomesHalve) {
    // I - k J is singular for J = 10 and k = 0.1.
    const OdeProblem p = linear_problem(10.0);
    const HistoryWindow w = bootstrap(p, 0.0, scalar(1.0), 0.01);
    const StepAttempt a = attempt_step(p, w, 0.1, unit_config(1.0, 0.01));
    EXPECT_EQ(a.verdict, Verdict::Halve);
    ASSERT_TRUE(a.failure);
    EXPECT_EQ(*a.failure, ErrorKind::SingularLinearSystem);
    EXPECT_TRUE(std::isinf(a.est));
}

TEST(AttemptStep, RejectsNonPositiveStep) {
    const HistoryWindow w = bootstrap(zero_problem(), 0.0, scalar(1.0), 0.1);
    EXPECT_THROW((void)attempt_step(zero_problem(), w, 0.0, SolverConfig{}), SolverError);
}

TEST(FilteredIE23, ZeroRhsOnlyDoubles) {
    SolverConfig cfg = unit_config(1e-3, 0.01);
    const AdaptiveRun run = solve_filtered_ie23(zero_problem(), cfg, scalar(1.0));
    EXPECT_EQ(run.stats.rejected, 0u);
    EXPECT_EQ(run.trajectory.final_time(), 1.0);
    EXPECT_EQ(run.stats.max_k_used, cfg.max_step());
    for (const State& y : run.trajectory.states) EXPECT_DOUBLE_EQ(y[0], 1.0);
    EXPECT_EQ(run.stats.doublings, run.stats.accepted);
    // 0.01 -> 0.02 -> 0.04 -> 0.08, then clamped to 0.1.
    EXPECT_EQ(run.trajectory.steps[4], 0.01);
    EXPECT_EQ(run.trajectory.steps[7], 0.08);
    EXPECT_EQ(run.trajectory.steps[8], 0.1);
}

TEST(FilteredIE23, BootstrapRowsCarryZeroEstimate) {
    const ProblemSpec spec = model_problem(1.0);
    const AdaptiveRun run = solve_filtered_ie23(spec.problem, spec.config(1e-3, 0.01), spec.initial_state);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(run.trajectory.est[i], 0.0);
    EXPECT_EQ(run.trajectory.steps[0], 0.0);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(run.trajectory.steps[i], 0.01);
    EXPECT_EQ(run.stats.accepted, run.trajectory.size() - 4);
    EXPECT_EQ(run.trajectory.rejections, run.stats.rejected);
    EXPECT_EQ(run.trajectory.steps_taken, run.trajectory.size() - 1);
}

TEST(FilteredIE23, ModerateToleranceKeepsInitialStep) {
    // est stays inside the accept band on y' = y with k = 0.01 for tol = 1e-3.
    const ProblemSpec spec = model_problem(1.0);
    const AdaptiveRun run = solve_filtered_ie23(spec.problem, spec.config(1e-3, 0.01), spec.initial_state);
    EXPECT_EQ(run.stats.rejected, 0u);
    EXPECT_EQ(run.stats.doublings, 0u);
    EXPECT_NEAR(*spec.final_error(run.trajectory), 1.54956E-05, 1e-9);
}

TEST(FilteredIE23, InvariantsOnModelProblems) {
    for (double tol : {5e-3, 2.5e-4}) {
        for (const ProblemSpec& spec : {model_problem(1.0), model_analog_problem(3.0), quasi_periodic_problem()}) {
            const SolverConfig cfg = spec.config(tol, 0.01);
            const AdaptiveRun run = solve_filtered_ie23(spec.problem, cfg, spec.initial_state);
            const Trajectory& tr = run.trajectory;
            EXPECT_EQ(tr.final_time(), spec.t_end);
            bool final_approach = false;
            for (std::size_t i = 4; i < tr.size(); ++i) {
                const double k = tr.steps[i];
                EXPECT_LE(tr.est[i], tol * k) << spec.problem.name << " t=" << tr.times[i];
                EXPECT_GE(k, cfg.min_step());
                EXPECT_LE(k, cfg.max_step());
                EXPECT_GT(tr.times[i], tr.times[i - 1]);
                const bool on_lattice = is_power_of_two(k / cfg.dt0) || is_power_of_two(k / cfg.max_step());
                if (!on_lattice && !final_approach) {
                    // Leaving the dt0 * 2^j lattice is only allowed when the end clamp cut the candidate.
                    EXPECT_LE(spec.t_end - tr.times[i - 1], 2 * tr.steps[i - 1] + cfg.min_step());
                    final_approach = true;
                }
                if (final_approach || i == 4 || !is_power_of_two(tr.steps[i - 1] / cfg.dt0) ||
                    !is_power_of_two(k / cfg.dt0)) {
                    continue;
                }
                const double ratio = k / tr.steps[i - 1];
                EXPECT_TRUE(is_power_of_two(ratio) && ratio <= 2.0) << ratio << " at t=" << tr.times[i];
            }
        }
    }
}

TEST(FilteredIE23, EmbeddedPairIsReproducibleFromStoredWindow) {
    const ProblemSpec spec = model_analog_problem(3.0);
    const SolverConfig cfg = spec.config(1e-3, 0.01);
    const AdaptiveRun run = solve_filtered_ie23(spec.problem, cfg, spec.initial_state);
    const Trajectory& tr = run.trajectory;
    for (std::size_t i = 4; i < tr.size(); ++i) {
        const StepAttempt a = attempt_step(spec.problem, window_of(tr, i - 1), tr.steps[i], cfg);
        EXPECT_NEAR(a.y_third[0], tr.states[i][0], 1e-13 * (1 + std::abs(tr.states[i][0])));
        EXPECT_NEAR(a.est, tr.est[i], 1e-13 + 1e-9 * tr.est[i]);
    }
}

TEST(FilteredIE23, RunsAreBitDeterministic) {
    const ProblemSpec spec = van_der_pol_problem(5.0);
    SolverConfig cfg = spec.config(1e-2, 1e-3);
    cfg.t_end = 20.0;
    const AdaptiveRun a = solve_filtered_ie23(spec.problem, cfg, spec.initial_state);
    const AdaptiveRun b = solve_filtered_ie23(spec.problem, cfg, spec.initial_state);
    ASSERT_EQ(a.trajectory.size(), b.trajectory.size());
    for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
        ASSERT_EQ(a.trajectory.times[i], b.trajectory.times[i]);
        ASSERT_EQ(a.trajectory.states[i], b.trajectory.states[i]);
        ASSERT_EQ(a.trajectory.est[i], b.trajectory.est[i]);
    }
    EXPECT_EQ(a.stats.rejected, b.stats.rejected);
}

TEST(FilteredIE23, MinimumStepIsReported) {
    const ProblemSpec spec = model_problem(1.0);
    SolverConfig cfg = spec.config(1e-12, 0.01);
    cfg.k_min = 1e-3;
    try {
        (void)solve_filtered_ie23(spec.problem, cfg, spec.initial_state);
        FAIL();
    } catch (const SolverError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MinStepReached);
    }
}

TEST(FilteredIE23, StepBelowTimeResolutionIsReported) {
    const ProblemSpec spec = model_problem(1.0);
    SolverConfig cfg = spec.config(1e-30, 0.01);
    cfg.k_min = 1e-300;
    cfg.max_halvings_per_step = 2000;
    try {
        (void)solve_filtered_ie23(spec.problem, cfg, spec.initial_state);
        FAIL();
    } catch (const SolverError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MinStepReached);
    }
}

TEST(FilteredIE23, IntervalShorterThanBootstrapIsRejected) {
    SolverConfig cfg = unit_config(1e-3, 0.4);
    try {
        (void)solve_filtered_ie23(zero_problem(), cfg, scalar(1.0));
        FAIL();
    } catch (const SolverError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
    }
}

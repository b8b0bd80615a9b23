#pragma once

// Constant-step integrators: the RK3 startup, the filtered Implicit Euler
// methods IE-Pre-2 / IE-Pre-Post-3, and a classical RK4 used as the in-repo
// reference solution.

#include "fie23/ode.hpp"

#include <string_view>

namespace fie23 {

enum class ConstantStepMethod { Rk3, IePre2, IePrePost3, Rk4Reference };

[[nodiscard]] std::string_view to_string(ConstantStepMethod method) noexcept;

/// How the filtered methods produce y_1, y_2 before the first filtered step.
enum class Startup { ImplicitEuler, Rk3 };

struct ConstantStepRun {
    Trajectory trajectory;
    double dt = 0.0;
    ConstantStepMethod method = ConstantStepMethod::IePrePost3;
};

/// One step of Kutta's third-order method.
[[nodiscard]] State rk3_step(const OdeProblem& p, double t, const State& y, double h);

/// One step of the classical fourth-order Runge-Kutta method.
[[nodiscard]] State rk4_step(const OdeProblem& p, double t, const State& y, double h);

/// Three RK3 steps of size dt from (t0, y0); the resulting four points seed
/// the adaptive method. Throws NonPositiveStep or NonFiniteState.
[[nodiscard]] HistoryWindow bootstrap(const OdeProblem& p, double t0, const State& y0, double dt);

/// Second- and third-order values of one uniform filtered step.
struct FilteredPair {
    State second_order;
    State third_order;
};

/// One uniform step of size dt from y_{n-2}, y_{n-1}, y_n to t_next:
///   y~ = y_n - (y_n - 2 y_{n-1} + y_{n-2}) / 2,  IE solve,
///   y3 = y2 - 5/11 (y2 - 3 y_n + 3 y_{n-1} - y_{n-2}).
/// The Newton iteration starts from y_n.
[[nodiscard]] FilteredPair constant_filtered_step(const OdeProblem& p, double t_next, double dt,
                                                  const State& y_nm2, const State& y_nm1, const State& y_n,
                                                  const NewtonSettings& newton);

/// IE-Pre-2 at constant step cfg.dt0 on [cfg.t_begin, cfg.t_end]. A step
/// that does not divide the interval yields a shortened final step, taken
/// with the variable-step filter coefficients.
[[nodiscard]] ConstantStepRun solve_ie_pre_2(const OdeProblem& p, const SolverConfig& cfg, const State& y0,
                                             Startup startup = Startup::ImplicitEuler);

/// IE-Pre-Post-3 at constant step cfg.dt0.
[[nodiscard]] ConstantStepRun solve_ie_pre_post_3(const OdeProblem& p, const SolverConfig& cfg,
                                                  const State& y0, Startup startup = Startup::Rk3);

/// Classical RK4 at constant step cfg.dt0. Throws NonFiniteState on blow-up.
[[nodiscard]] ConstantStepRun solve_rk4_reference(const OdeProblem& p, const SolverConfig& cfg,
                                                  const State& y0);

/// RK3 at constant step cfg.dt0.
[[nodiscard]] ConstantStepRun solve_rk3(const OdeProblem& p, const SolverConfig& cfg, const State& y0);

/// Dispatches on method using each method's default startup.
[[nodiscard]] ConstantStepRun solve_constant_step(ConstantStepMethod method, const OdeProblem& p,
                                                  const SolverConfig& cfg, const State& y0);

}  // namespace fie23

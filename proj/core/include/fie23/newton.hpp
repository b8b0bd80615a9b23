#pragma once

#include "fie23/ode.hpp"

namespace fie23 {

struct NewtonOutcome {
    State y;
    int iterations = 0;
    double residual_norm = 0.0;
};

/// Solves the Implicit Euler stage  y - y_tilde - k_n f(t_next, y) = 0  by
/// Newton's method started from y_guess.
///
/// Converged when max|g(y)| <= settings.tol * (1 + max|y|). The Newton matrix
/// I - k_n J uses the analytic Jacobian when the problem provides one and a
/// forward difference with increment sqrt(eps) (1 + |y_i|) otherwise.
///
/// Throws NonPositiveStep, NewtonDiverged (iteration cap or non-finite
/// iterate) or SingularLinearSystem.
[[nodiscard]] NewtonOutcome implicit_euler_stage(const OdeProblem& p, double t_next, double k_n,
                                                 const State& y_tilde, const State& y_guess,
                                                 const NewtonSettings& settings = {});

/// Forward-difference Jacobian of p.rhs at (t, y).
[[nodiscard]] Matrix finite_difference_jacobian(const OdeProblem& p, double t, const State& y);

}  // namespace fie23

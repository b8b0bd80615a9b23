#pragma once

// Test-problem suite: the linear model problem, a quasi-periodic fourth
// order equation, a nonautonomous stiff analog of the model problem and the
// van der Pol oscillator.

#include "fie23/ode.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fie23 {

using ParameterMap = std::map<std::string, double, std::less<>>;

/// Which part of the state an error is measured on.
enum class ErrorMeasure { MaxNorm, FirstComponent };

struct ProblemSpec {
    OdeProblem problem;
    double t_begin = 0.0;
    double t_end = 1.0;
    State initial_state;
    ParameterMap parameters;
    ErrorMeasure error_measure = ErrorMeasure::MaxNorm;

    /// Distance between two states under error_measure.
    [[nodiscard]] double error_between(const State& y, const State& reference) const;

    /// Error of the final point against the exact solution; empty when the
    /// problem has no closed form.
    [[nodiscard]] std::optional<double> final_error(const Trajectory& traj) const;

    /// Config spanning the default range; the remaining fields keep their defaults.
    [[nodiscard]] SolverConfig config(double tol, double dt0) const;
};

/// y' = lambda y, y(0) = 1 on [0, 2]; exact e^{lambda t}.
[[nodiscard]] ProblemSpec model_problem(double lambda = 1.0);

/// x'''' + (pi^2 + 1) x'' + pi^2 x = 0 as a first-order system in
/// (x, x', x'', x''') on [0, 20]; exact x = cos t + cos(pi t). Errors are
/// measured on x only.
[[nodiscard]] ProblemSpec quasi_periodic_problem();

/// y' = (gamma - 2t) y, y(0) = 1; exact e^{gamma t - t^2}. Default range
/// [0, gamma] ([0, 1] when gamma <= 0).
[[nodiscard]] ProblemSpec model_analog_problem(double gamma = 1.0);

/// x'' - mu (1 - x^2) x' + x = 0 as (x, v), started from (2, 0). No closed
/// form. Throws InvalidConfig unless mu > 0.
[[nodiscard]] ProblemSpec van_der_pol_problem(double mu = 1.0);

/// Final time used for the van der Pol runs: 50, 50, 100, 200, 500, 1500
/// for mu = 1, 2, 5, 10, 100, 200 and 50 for any other mu.
[[nodiscard]] double van_der_pol_final_time(double mu);

/// Registered names: "model", "quasi-periodic", "model-analog", "van-der-pol".
[[nodiscard]] std::vector<std::string> problem_names();

/// Builds a registered problem. Recognised parameters: lambda (model),
/// gamma (model-analog), mu (van-der-pol). Throws UnknownProblem for an
/// unknown name and InvalidConfig for an unknown parameter.
[[nodiscard]] ProblemSpec make_problem(std::string_view name, const ParameterMap& params = {});

/// Final state of a constant-step RK4 run whose step has been halved until
/// two successive levels agree to within `threshold` in max-norm. Levels
/// that blow up are skipped; throws NonFiniteState if every level does.
struct ReferenceSolution {
    State final_state;
    double dt = 0.0;
    double last_change = 0.0;  // max-norm change between the two finest levels
    int levels = 0;
    bool converged = false;
};

[[nodiscard]] ReferenceSolution validated_reference(const ProblemSpec& spec, double t_end, double dt_initial,
                                                    double threshold = 1e-8, int max_levels = 10);

}  // namespace fie23

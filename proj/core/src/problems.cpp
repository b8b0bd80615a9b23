#include "fie23/problems.hpp"

#include "fie23/errors.hpp"
#include "fie23/steppers.hpp"

#include <cmath>
#include <numbers>

namespace fie23 {
namespace {

double parameter_or(const ParameterMap& params, std::string_view key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void reject_unknown_parameters(std::string_view problem, const ParameterMap& params,
                               std::initializer_list<std::string_view> known) {
    for (const auto& [key, value] : params) {
        bool ok = false;
        for (std::string_view k : known) ok = ok || key == k;
        if (!ok) {
            throw SolverError(ErrorKind::InvalidConfig,
                              "problem '" + std::string(problem) + "' has no parameter '" + key + "'");
        }
    }
}

State scalar(double v) {
    State s(1);
    s[0] = v;
    return s;
}

}  // namespace

double ProblemSpec::error_between(const State& y, const State& reference) const {
    if (y.size() != reference.size()) {
        throw SolverError(ErrorKind::DimensionMismatch, "error operands differ in dimension");
    }
    if (error_measure == ErrorMeasure::FirstComponent) {
        return std::abs(y[0] - reference[0]);
    }
    return max_norm(y - reference);
}

std::optional<double> ProblemSpec::final_error(const Trajectory& traj) const {
    if (!problem.has_exact() || traj.empty()) return std::nullopt;
    return error_between(traj.final_state(), problem.exact(traj.final_time()));
}

SolverConfig ProblemSpec::config(double tol, double dt0) const {
    SolverConfig cfg;
    cfg.tol = tol;
    cfg.dt0 = dt0;
    cfg.t_begin = t_begin;
    cfg.t_end = t_end;
    return cfg;
}

ProblemSpec model_problem(double lambda) {
    ProblemSpec spec;
    spec.problem.name = "model";
    spec.problem.dimension = 1;
    spec.problem.rhs = [lambda](double, const State& y) -> State { return lambda * y; };
    spec.problem.jacobian = [lambda](double, const State&) -> Matrix { return Matrix::Constant(1, 1, lambda); };
    spec.problem.exact = [lambda](double t) -> State { return scalar(std::exp(lambda * t)); };
    spec.t_begin = 0.0;
    spec.t_end = 2.0;
    spec.initial_state = scalar(1.0);
    spec.parameters = {{"lambda", lambda}};
    return spec;
}

ProblemSpec quasi_periodic_problem() {
    using std::numbers::pi;
    const double pi2 = pi * pi;

    Matrix a = Matrix::Zero(4, 4);
    a(0, 1) = 1.0;
    a(1, 2) = 1.0;
    a(2, 3) = 1.0;
    a(3, 0) = -pi2;
    a(3, 2) = -(pi2 + 1.0);

    ProblemSpec spec;
    spec.problem.name = "quasi-periodic";
    spec.problem.dimension = 4;
    spec.problem.rhs = [a](double, const State& u) -> State { return a * u; };
    spec.problem.jacobian = [a](double, const State&) -> Matrix { return a; };
    spec.problem.exact = [](double t) -> State {
        State u(4);
        u << std::cos(t) + std::cos(pi * t), -std::sin(t) - pi * std::sin(pi * t),
            -std::cos(t) - pi * pi * std::cos(pi * t), std::sin(t) + pi * pi * pi * std::sin(pi * t);
        return u;
    };
    spec.t_begin = 0.0;
    spec.t_end = 20.0;
    spec.initial_state = State(4);
    spec.initial_state << 2.0, 0.0, -(1.0 + pi2), 0.0;
    spec.error_measure = ErrorMeasure::FirstComponent;
    return spec;
}

ProblemSpec model_analog_problem(double gamma) {
    ProblemSpec spec;
    spec.problem.name = "model-analog";
    spec.problem.dimension = 1;
    spec.problem.rhs = [gamma](double t, const State& y) -> State { return (gamma - 2.0 * t) * y; };
    spec.problem.jacobian = [gamma](double t, const State&) -> Matrix {
        return Matrix::Constant(1, 1, gamma - 2.0 * t);
    };
    spec.problem.exact = [gamma](double t) -> State { return scalar(std::exp(gamma * t - t * t)); };
    spec.t_begin = 0.0;
    spec.t_end = gamma > 0.0 ? gamma : 1.0;
    spec.initial_state = scalar(1.0);
    spec.parameters = {{"gamma", gamma}};
    return spec;
}

ProblemSpec van_der_pol_problem(double mu) {
    if (!(mu > 0.0)) {
        throw SolverError(ErrorKind::InvalidConfig, "van der Pol needs mu > 0");
    }
    ProblemSpec spec;
    spec.problem.name = "van-der-pol";
    spec.problem.dimension = 2;
    spec.problem.rhs = [mu](double, const State& u) -> State {
        State du(2);
        du << u[1], mu * (1.0 - u[0] * u[0]) * u[1] - u[0];
        return du;
    };
    spec.problem.jacobian = [mu](double, const State& u) -> Matrix {
        Matrix j(2, 2);
        j << 0.0, 1.0, -2.0 * mu * u[0] * u[1] - 1.0, mu * (1.0 - u[0] * u[0]);
        return j;
    };
    spec.t_begin = 0.0;
    spec.t_end = van_der_pol_final_time(mu);
    spec.initial_state = State(2);
    spec.initial_state << 2.0, 0.0;
    spec.parameters = {{"mu", mu}};
    spec.error_measure = ErrorMeasure::FirstComponent;
    return spec;
}

double van_der_pol_final_time(double mu) {
    if (mu == 1.0 || mu == 2.0) return 50.0;
    if (mu == 5.0) return 100.0;
    if (mu == 10.0) return 200.0;
    if (mu == 100.0) return 500.0;
    if (mu == 200.0) return 1500.0;
    return 50.0;
}

std::vector<std::string> problem_names() {
    return {"model", "quasi-periodic", "model-analog", "van-der-pol"};
}

ProblemSpec make_problem(std::string_view name, const ParameterMap& params) {
    if (name == "model") {
        reject_unknown_parameters(name, params, {"lambda"});
        return model_problem(parameter_or(params, "lambda", 1.0));
    }
    if (name == "quasi-periodic") {
        reject_unknown_parameters(name, params, {});
        return quasi_periodic_problem();
    }
    if (name == "model-analog") {
        reject_unknown_parameters(name, params, {"gamma"});
        return model_analog_problem(parameter_or(params, "gamma", 1.0));
    }
    if (name == "van-der-pol") {
        reject_unknown_parameters(name, params, {"mu"});
        return van_der_pol_problem(parameter_or(params, "mu", 1.0));
    }
    throw SolverError(ErrorKind::UnknownProblem, "no problem named '" + std::string(name) + "'");
}

ReferenceSolution validated_reference(const ProblemSpec& spec, double t_end, double dt_initial, double threshold,
                                      int max_levels) {
    SolverConfig cfg = spec.config(1.0, dt_initial);
    cfg.t_end = t_end;

    // Levels that blow up (explicit RK4 outside its stability region) are
    // skipped; comparison starts at the first stable level.
    ReferenceSolution ref;
    std::optional<State> previous;
    for (ref.levels = 0; ref.levels < max_levels; cfg.dt0 *= 0.5) {
        ++ref.levels;
        State current;
        try {
            current = solve_rk4_reference(spec.problem, cfg, spec.initial_state).trajectory.final_state();
        } catch (const SolverError& e) {
            if (e.kind() != ErrorKind::NonFiniteState) throw;
            previous.reset();
            continue;
        }
        ref.dt = cfg.dt0;
        if (previous) {
            ref.last_change = max_norm(current - *previous);
            if (ref.last_change < threshold) {
                ref.converged = true;
                previous = std::move(current);
                break;
            }
        }
        previous = std::move(current);
    }
    if (!previous) {
        throw SolverError(ErrorKind::NonFiniteState, "reference integrator unstable at every level");
    }
    ref.final_state = std::move(*previous);
    return ref;
}

}  // namespace fie23

#include "fie23/steppers.hpp"

#include "fie23/errors.hpp"
#include "fie23/filters.hpp"
#include "fie23/newton.hpp"

#include <cmath>
#include <sstream>

namespace fie23 {
namespace {

constexpr int kStartupSteps = 2;
constexpr double kPostFilterBeta = 5.0 / 11.0;

// Uniform steps of cfg.dt0 plus an optional shortened final step.
struct StepLayout {
    std::size_t full_steps = 0;
    double remainder = 0.0;

    [[nodiscard]] std::size_t total() const noexcept { return full_steps + (remainder > 0.0 ? 1 : 0); }
};

StepLayout layout_steps(const SolverConfig& cfg) {
    const double n = cfg.span() / cfg.dt0;
    const double nearest = std::round(n);
    if (nearest >= 1.0 && std::abs(n - nearest) <= 1e-9 * std::max(1.0, n)) {
        return {static_cast<std::size_t>(nearest), 0.0};
    }
    const double full = std::floor(n);
    return {static_cast<std::size_t>(full), cfg.span() - full * cfg.dt0};
}

double grid_time(const SolverConfig& cfg, const StepLayout& layout, std::size_t i) {
    if (i == layout.total()) return cfg.t_end;
    return cfg.t_begin + static_cast<double>(i) * cfg.dt0;
}

void require_finite(const State& y, double t) {
    if (!all_finite(y)) {
        std::ostringstream os;
        os << "state became non-finite at t = " << t;
        throw SolverError(ErrorKind::NonFiniteState, os.str());
    }
}

void require_initial_state(const OdeProblem& p, const State& y0) {
    if (y0.size() != p.dimension) {
        throw SolverError(ErrorKind::DimensionMismatch, "initial state does not match the problem dimension");
    }
}

HistoryWindow last_four(const Trajectory& traj) {
    if (traj.size() < HistoryWindow::kSize) {
        throw SolverError(ErrorKind::InvalidConfig,
                          "interval too short: a shortened final step needs four prior points");
    }
    std::array<TimedState, HistoryWindow::kSize> pts;
    const std::size_t first = traj.size() - HistoryWindow::kSize;
    for (std::size_t i = 0; i < HistoryWindow::kSize; ++i) {
        pts[i] = {traj.times[first + i], traj.states[first + i]};
    }
    return HistoryWindow::from_points(pts);
}

ConstantStepRun solve_filtered(const OdeProblem& p, const SolverConfig& cfg, const State& y0, Startup startup,
                               ConstantStepMethod method) {
    cfg.validate_constant_step();
    require_initial_state(p, y0);
    const bool third_order = method == ConstantStepMethod::IePrePost3;
    const NewtonSettings newton = cfg.newton();
    const StepLayout layout = layout_steps(cfg);

    ConstantStepRun run{{}, cfg.dt0, method};
    Trajectory& traj = run.trajectory;
    traj.append(cfg.t_begin, y0, 0.0, 0.0);

    for (std::size_t i = 1; i <= layout.total(); ++i) {
        const double t_n = traj.final_time();
        const double t_next = grid_time(cfg, layout, i);
        const bool shortened = i > layout.full_steps;
        const double h = shortened ? layout.remainder : cfg.dt0;
        const std::size_t n = traj.size() - 1;

        State y_next;
        double est = 0.0;
        if (i <= kStartupSteps) {
            y_next = startup == Startup::Rk3
                         ? rk3_step(p, t_n, traj.states[n], h)
                         : implicit_euler_stage(p, t_next, h, traj.states[n], traj.states[n], newton).y;
        } else if (!shortened) {
            FilteredPair pair =
                constant_filtered_step(p, t_next, h, traj.states[n - 2], traj.states[n - 1], traj.states[n], newton);
            est = error_estimate(pair.second_order, pair.third_order);
            y_next = third_order ? std::move(pair.third_order) : std::move(pair.second_order);
        } else {
            const HistoryWindow w = last_four(traj);
            const FilterCoefficients c =
                beta_coeff(h, w.step_back(1), w.step_back(2), w.step_back(3), cfg.post_filter_form);
            const State y_tilde = pre_filter(w, c.alpha);
            State y_second = implicit_euler_stage(p, t_next, h, y_tilde, w.latest_state(), newton).y;
            State y_third = post_filter(y_second, w, h, c.beta);
            est = error_estimate(y_second, y_third);
            y_next = third_order ? std::move(y_third) : std::move(y_second);
        }
        require_finite(y_next, t_next);
        traj.append(t_next, std::move(y_next), est, h);
    }
    traj.steps_taken = traj.size() - 1;
    return run;
}

template <typename StepFn>
ConstantStepRun solve_one_step_method(const OdeProblem& p, const SolverConfig& cfg, const State& y0,
                                      ConstantStepMethod method, StepFn step) {
    cfg.validate_constant_step();
    require_initial_state(p, y0);
    const StepLayout layout = layout_steps(cfg);

    ConstantStepRun run{{}, cfg.dt0, method};
    Trajectory& traj = run.trajectory;
    traj.append(cfg.t_begin, y0, 0.0, 0.0);
    for (std::size_t i = 1; i <= layout.total(); ++i) {
        const double t_n = traj.final_time();
        const double h = i > layout.full_steps ? layout.remainder : cfg.dt0;
        State y_next = step(p, t_n, traj.final_state(), h);
        const double t_next = grid_time(cfg, layout, i);
        require_finite(y_next, t_next);
        traj.append(t_next, std::move(y_next), 0.0, h);
    }
    traj.steps_taken = traj.size() - 1;
    return run;
}

}  // namespace

std::string_view to_string(ConstantStepMethod method) noexcept {
    switch (method) {
        case ConstantStepMethod::Rk3: return "rk3";
        case ConstantStepMethod::IePre2: return "ie-pre-2";
        case ConstantStepMethod::IePrePost3: return "ie-pre-post-3";
        case ConstantStepMethod::Rk4Reference: return "rk4-ref";
    }
    return "unknown";
}

State rk3_step(const OdeProblem& p, double t, const State& y, double h) {
    const State s1 = p.f(t, y);
    const State s2 = p.f(t + 0.5 * h, y + (0.5 * h) * s1);
    const State s3 = p.f(t + h, y - h * s1 + (2.0 * h) * s2);
    return y + (h / 6.0) * (s1 + 4.0 * s2 + s3);
}

State rk4_step(const OdeProblem& p, double t, const State& y, double h) {
    const double half = 0.5 * h;
    const State s1 = p.f(t, y);
    const State s2 = p.f(t + half, y + half * s1);
    const State s3 = p.f(t + half, y + half * s2);
    const State s4 = p.f(t + h, y + h * s3);
    return y + (h / 6.0) * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
}

HistoryWindow bootstrap(const OdeProblem& p, double t0, const State& y0, double dt) {
    if (!(dt > 0.0)) {
        throw SolverError(ErrorKind::NonPositiveStep, "bootstrap step must be positive");
    }
    require_initial_state(p, y0);
    std::array<TimedState, HistoryWindow::kSize> pts;
    pts[0] = {t0, y0};
    for (std::size_t i = 1; i < HistoryWindow::kSize; ++i) {
        pts[i].t = t0 + static_cast<double>(i) * dt;
        pts[i].y = rk3_step(p, pts[i - 1].t, pts[i - 1].y, dt);
        require_finite(pts[i].y, pts[i].t);
    }
    return HistoryWindow::from_points(pts);
}

FilteredPair constant_filtered_step(const OdeProblem& p, double t_next, double dt, const State& y_nm2,
                                    const State& y_nm1, const State& y_n, const NewtonSettings& newton) {
    const State y_tilde = y_n - 0.5 * (y_n - 2.0 * y_nm1 + y_nm2);
    FilteredPair pair;
    pair.second_order = implicit_euler_stage(p, t_next, dt, y_tilde, y_n, newton).y;
    pair.third_order =
        pair.second_order - kPostFilterBeta * (pair.second_order - 3.0 * y_n + 3.0 * y_nm1 - y_nm2);
    return pair;
}

ConstantStepRun solve_ie_pre_2(const OdeProblem& p, const SolverConfig& cfg, const State& y0, Startup startup) {
    return solve_filtered(p, cfg, y0, startup, ConstantStepMethod::IePre2);
}

ConstantStepRun solve_ie_pre_post_3(const OdeProblem& p, const SolverConfig& cfg, const State& y0,
                                    Startup startup) {
    return solve_filtered(p, cfg, y0, startup, ConstantStepMethod::IePrePost3);
}

ConstantStepRun solve_rk4_reference(const OdeProblem& p, const SolverConfig& cfg, const State& y0) {
    return solve_one_step_method(p, cfg, y0, ConstantStepMethod::Rk4Reference, rk4_step);
}

ConstantStepRun solve_rk3(const OdeProblem& p, const SolverConfig& cfg, const State& y0) {
    return solve_one_step_method(p, cfg, y0, ConstantStepMethod::Rk3, rk3_step);
}

ConstantStepRun solve_constant_step(ConstantStepMethod method, const OdeProblem& p, const SolverConfig& cfg,
                                    const State& y0) {
    switch (method) {
        case ConstantStepMethod::Rk3: return solve_rk3(p, cfg, y0);
        case ConstantStepMethod::IePre2: return solve_ie_pre_2(p, cfg, y0);
        case ConstantStepMethod::IePrePost3: return solve_ie_pre_post_3(p, cfg, y0);
        case ConstantStepMethod::Rk4Reference: return solve_rk4_reference(p, cfg, y0);
    }
    throw SolverError(ErrorKind::InvalidConfig, "unknown constant-step method");
}

}  // namespace fie23

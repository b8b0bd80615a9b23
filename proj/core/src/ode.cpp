#include "fie23/ode.hpp"

#include "fie23/errors.hpp"

#include <cmath>
#include <sstream>

namespace fie23 {

double max_norm(const State& v) noexcept {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

bool all_finite(const State& v) noexcept {
    return v.allFinite();
}

State OdeProblem::f(double t, const State& y) const {
    State out = rhs(t, y);
    if (out.size() != dimension) {
        std::ostringstream os;
        os << name << ": rhs returned " << out.size() << " components, expected " << dimension;
        throw SolverError(ErrorKind::DimensionMismatch, os.str());
    }
    return out;
}

HistoryWindow HistoryWindow::from_points(std::span<const TimedState> points) {
    if (points.size() != kSize) {
        throw SolverError(ErrorKind::DimensionMismatch, "history window needs exactly 4 points");
    }
    HistoryWindow w;
    for (std::size_t i = 0; i < kSize; ++i) {
        if (i > 0 && !(points[i].t > points[i - 1].t)) {
            throw SolverError(ErrorKind::NonMonotonicTimes, "history times must strictly increase");
        }
        if (points[i].y.size() != points[0].y.size()) {
            throw SolverError(ErrorKind::DimensionMismatch, "history states differ in dimension");
        }
        w.times_[i] = points[i].t;
        w.states_[i] = points[i].y;
    }
    w.refresh_steps();
    return w;
}

HistoryWindow HistoryWindow::advance(double t_new, State y_new) const {
    if (!(t_new > latest_time())) {
        throw SolverError(ErrorKind::NonMonotonicTimes, "window can only advance forward in time");
    }
    if (y_new.size() != dimension()) {
        throw SolverError(ErrorKind::DimensionMismatch, "new state differs in dimension");
    }
    HistoryWindow w;
    for (std::size_t i = 0; i + 1 < kSize; ++i) {
        w.times_[i] = times_[i + 1];
        w.states_[i] = states_[i + 1];
    }
    w.times_[kSize - 1] = t_new;
    w.states_[kSize - 1] = std::move(y_new);
    w.refresh_steps();
    return w;
}

double HistoryWindow::step_back(int lag) const {
    if (lag < 1 || lag > static_cast<int>(kSize) - 1) {
        throw std::out_of_range("step_back lag must be 1, 2 or 3");
    }
    return steps_[static_cast<std::size_t>(lag - 1)];
}

void HistoryWindow::refresh_steps() {
    for (std::size_t lag = 1; lag < kSize; ++lag) {
        steps_[lag - 1] = times_[kSize - lag] - times_[kSize - lag - 1];
    }
}

void SolverConfig::validate_constant_step() const {
    if (!(t_begin < t_end)) {
        throw SolverError(ErrorKind::InvalidConfig, "t_begin must be smaller than t_end");
    }
    if (!(dt0 > 0.0) || !std::isfinite(dt0)) {
        throw SolverError(ErrorKind::InvalidConfig, "dt0 must be positive");
    }
    if (!(newton_tol > 0.0) || newton_max_iter < 1) {
        throw SolverError(ErrorKind::InvalidConfig, "Newton tolerance and iteration cap must be positive");
    }
}

void SolverConfig::validate() const {
    validate_constant_step();
    if (!(tol > 0.0)) {
        throw SolverError(ErrorKind::InvalidConfig, "tol must be positive");
    }
    if (!(min_step() > 0.0) || !(min_step() < dt0) || !(dt0 <= max_step())) {
        std::ostringstream os;
        os << "need k_min < dt0 <= k_max (k_min=" << min_step() << ", dt0=" << dt0
           << ", k_max=" << max_step() << ")";
        throw SolverError(ErrorKind::InvalidConfig, os.str());
    }
    if (doubling_exponent < 1 || max_halvings_per_step < 1) {
        throw SolverError(ErrorKind::InvalidConfig, "doubling exponent and halving cap must be positive");
    }
}

void Trajectory::append(double t, State y, double error_estimate, double step) {
    if (!times.empty()) {
        if (!(t > times.back())) {
            throw SolverError(ErrorKind::NonMonotonicTimes, "trajectory times must strictly increase");
        }
        if (y.size() != states.front().size()) {
            throw SolverError(ErrorKind::DimensionMismatch, "trajectory state differs in dimension");
        }
    }
    times.push_back(t);
    states.push_back(std::move(y));
    est.push_back(error_estimate);
    steps.push_back(step);
}

}  // namespace fie23

#pragma once

// Problem abstraction, history window, solver configuration and trajectory
// recording shared by every integrator in the library.

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fie23 {

using State = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

using RhsFunction = std::function<State(double t, const State& y)>;
using JacobianFunction = std::function<Matrix(double t, const State& y)>;
using ExactFunction = std::function<State(double t)>;

[[nodiscard]] double max_norm(const State& v) noexcept;
[[nodiscard]] bool all_finite(const State& v) noexcept;

/// y' = f(t, y) with optional analytic Jacobian and closed-form solution.
struct OdeProblem {
    std::string name;
    Eigen::Index dimension = 1;
    RhsFunction rhs;
    JacobianFunction jacobian;  // empty: Newton falls back to finite differences
    ExactFunction exact;        // empty: no closed form

    /// Evaluates rhs and enforces the output dimension.
    [[nodiscard]] State f(double t, const State& y) const;
    [[nodiscard]] bool has_jacobian() const noexcept { return static_cast<bool>(jacobian); }
    [[nodiscard]] bool has_exact() const noexcept { return static_cast<bool>(exact); }
};

struct TimedState {
    double t = 0.0;
    State y;
};

/// The four most recent accepted points (t_{n-3}, ..., t_n), oldest first.
class HistoryWindow {
public:
    static constexpr std::size_t kSize = 4;

    /// Throws NonMonotonicTimes or DimensionMismatch.
    [[nodiscard]] static HistoryWindow from_points(std::span<const TimedState> points);

    /// Evicts the oldest point. Throws NonMonotonicTimes unless t_new > t_n.
    [[nodiscard]] HistoryWindow advance(double t_new, State y_new) const;

    /// i = 0 is the oldest entry, i = 3 the newest.
    [[nodiscard]] double time(std::size_t i) const { return times_.at(i); }
    [[nodiscard]] const State& state(std::size_t i) const { return states_.at(i); }

    [[nodiscard]] double latest_time() const noexcept { return times_[kSize - 1]; }
    [[nodiscard]] const State& latest_state() const noexcept { return states_[kSize - 1]; }

    /// k_{n-lag} for lag in {1, 2, 3}: step_back(1) = t_n - t_{n-1}.
    [[nodiscard]] double step_back(int lag) const;

    [[nodiscard]] Eigen::Index dimension() const noexcept { return states_[0].size(); }

private:
    HistoryWindow() = default;
    void refresh_steps();

    std::array<double, kSize> times_{};
    std::array<State, kSize> states_{};
    std::array<double, kSize - 1> steps_{};  // steps_[0] = k_{n-1}
};

/// Selects the post-filter coefficient formula.
enum class PostFilterForm {
    /// Coefficient that makes Steps 1-3 exact on cubics for any step
    /// sequence (default).
    CubicExact,
    /// Coefficient from the exactness condition in which the derivative of
    /// the unfiltered value is interpolated from 3 t_i^2 instead of taken as
    /// f(t_{n+1}); coincides with CubicExact on uniform steps.
    InterpolatedDerivative,
};

struct NewtonSettings {
    double tol = 1e-10;
    int max_iter = 25;
};

struct SolverConfig {
    double tol = 1e-3;   // error per unit step
    double dt0 = 1e-2;   // initial (or constant) step
    double t_begin = 0.0;
    double t_end = 1.0;
    std::optional<double> k_min;  // default 1e-12 * (t_end - t_begin)
    std::optional<double> k_max;  // default (t_end - t_begin) / 10
    int doubling_exponent = 5;
    int max_halvings_per_step = 30;
    double newton_tol = 1e-10;
    int newton_max_iter = 25;
    PostFilterForm post_filter_form = PostFilterForm::CubicExact;

    [[nodiscard]] double span() const noexcept { return t_end - t_begin; }
    [[nodiscard]] double min_step() const noexcept { return k_min.value_or(1e-12 * span()); }
    [[nodiscard]] double max_step() const noexcept { return k_max.value_or(span() / 10.0); }
    [[nodiscard]] NewtonSettings newton() const noexcept { return {newton_tol, newton_max_iter}; }

    /// Throws InvalidConfig when an invariant is violated.
    void validate() const;
    /// Validation for constant-step runs, where tol and the step bounds are unused.
    void validate_constant_step() const;
};

/// Append-only record of a solve. Row i holds the step that produced it
/// (0 for the initial point) and its error estimate (0 for bootstrap rows).
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<double> est;
    std::vector<double> steps;
    std::size_t steps_taken = 0;
    std::size_t rejections = 0;

    /// Throws NonMonotonicTimes or DimensionMismatch.
    void append(double t, State y, double error_estimate, double step);

    [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
    [[nodiscard]] bool empty() const noexcept { return times.empty(); }
    [[nodiscard]] double final_time() const { return times.back(); }
    [[nodiscard]] const State& final_state() const { return states.back(); }
    [[nodiscard]] Eigen::Index dimension() const { return states.empty() ? 0 : states.front().size(); }
};

}  // namespace fie23

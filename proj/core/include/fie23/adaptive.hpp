#pragma once

// Filtered-IE23: the variable-step filtered Implicit Euler pair driven by a
// halving/doubling step controller.

#include "fie23/errors.hpp"
#include "fie23/ode.hpp"

#include <cstddef>
#include <optional>
#include <string_view>

namespace fie23 {

enum class Verdict { Accept, Halve, AcceptAndDouble };

[[nodiscard]] std::string_view to_string(Verdict verdict) noexcept;

struct StepAttempt {
    double k_n = 0.0;
    State y_second;
    State y_third;
    double est = 0.0;
    Verdict verdict = Verdict::Halve;
    /// Set when the attempt was rejected because the Newton solve failed or
    /// the post-filter coefficient degenerated rather than because est was
    /// too large. y_second / y_third may then be empty.
    std::optional<ErrorKind> failure;
};

struct AdaptiveRunStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t doublings = 0;  ///< AcceptAndDouble verdicts, including those clamped to k_max.
    std::size_t newton_failures = 0;
    std::size_t degenerate_beta = 0;
    double min_k_used = 0.0;
    double max_k_used = 0.0;
};

struct AdaptiveRun {
    Trajectory trajectory;
    AdaptiveRunStats stats;
};

/// Controller verdict for an error estimate on a step of size k_n:
/// Halve iff tol k_n < est (or est is not finite), AcceptAndDouble iff
/// est < tol k_n / 2^doubling_exponent, Accept otherwise.
[[nodiscard]] Verdict classify(double est, double k_n, double tol, int doubling_exponent) noexcept;

/// Steps 1-3 and the controller verdict for a candidate step k_n from the
/// window w. Newton failures and DegenerateBeta map to Verdict::Halve.
/// Throws NonPositiveStep for k_n <= 0.
[[nodiscard]] StepAttempt attempt_step(const OdeProblem& p, const HistoryWindow& w, double k_n,
                                       const SolverConfig& cfg);

/// Integrates from (cfg.t_begin, y0) to cfg.t_end: three RK3 bootstrap steps
/// of cfg.dt0, then filtered steps whose size is halved on rejection and
/// doubled for the next step after an AcceptAndDouble verdict. The
/// post-filtered value advances the solution and the last step is shortened
/// to land on cfg.t_end.
///
/// Throws InvalidConfig, MinStepReached (k below k_min or too many
/// halvings on one step) or NonFiniteState.
[[nodiscard]] AdaptiveRun solve_filtered_ie23(const OdeProblem& p, const SolverConfig& cfg, const State& y0);

}  // namespace fie23

#include "fie23/adaptive.hpp"

#include "fie23/filters.hpp"
#include "fie23/newton.hpp"
#include "fie23/steppers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fie23 {

std::string_view to_string(Verdict verdict) noexcept {
    switch (verdict) {
        case Verdict::Accept: return "accept";
        case Verdict::Halve: return "halve";
        case Verdict::AcceptAndDouble: return "accept-and-double";
    }
    return "unknown";
}

Verdict classify(double est, double k_n, double tol, int doubling_exponent) noexcept {
    const double allowed = tol * k_n;
    if (!(est <= allowed)) return Verdict::Halve;
    if (est < std::ldexp(allowed, -doubling_exponent)) return Verdict::AcceptAndDouble;
    return Verdict::Accept;
}

StepAttempt attempt_step(const OdeProblem& p, const HistoryWindow& w, double k_n, const SolverConfig& cfg) {
    if (!(k_n > 0.0)) {
        throw SolverError(ErrorKind::NonPositiveStep, "attempted step must be positive");
    }
    StepAttempt a;
    a.k_n = k_n;
    const double t_next = w.latest_time() + k_n;
    try {
        const FilterCoefficients c =
            beta_coeff(k_n, w.step_back(1), w.step_back(2), w.step_back(3), cfg.post_filter_form);
        const State y_tilde = pre_filter(w, c.alpha);
        a.y_second = implicit_euler_stage(p, t_next, k_n, y_tilde, w.latest_state(), cfg.newton()).y;
        a.y_third = post_filter(a.y_second, w, k_n, c.beta);
    } catch (const SolverError& e) {
        switch (e.kind()) {
            case ErrorKind::NewtonDiverged:
            case ErrorKind::SingularLinearSystem:
            case ErrorKind::DegenerateBeta:
                a.failure = e.kind();
                a.est = std::numeric_limits<double>::infinity();
                a.verdict = Verdict::Halve;
                return a;
            default:
                throw;
        }
    }
    a.est = error_estimate(a.y_second, a.y_third);
    a.verdict = classify(a.est, k_n, cfg.tol, cfg.doubling_exponent);
    return a;
}

AdaptiveRun solve_filtered_ie23(const OdeProblem& p, const SolverConfig& cfg, const State& y0) {
    cfg.validate();
    if (!(cfg.t_begin + 3.0 * cfg.dt0 < cfg.t_end)) {
        throw SolverError(ErrorKind::InvalidConfig, "interval shorter than the three bootstrap steps");
    }
    const double k_min = cfg.min_step();
    const double k_max = cfg.max_step();

    AdaptiveRun run;
    Trajectory& traj = run.trajectory;
    AdaptiveRunStats& stats = run.stats;
    stats.min_k_used = std::numeric_limits<double>::infinity();

    HistoryWindow w = bootstrap(p, cfg.t_begin, y0, cfg.dt0);
    for (std::size_t i = 0; i < HistoryWindow::kSize; ++i) {
        traj.append(w.time(i), w.state(i), 0.0, i == 0 ? 0.0 : cfg.dt0);
    }

    double k = cfg.dt0;
    while (w.latest_time() < cfg.t_end) {
        const double t_n = w.latest_time();
        const double remaining = cfg.t_end - t_n;
        k = std::clamp(k, k_min, k_max);

        int halvings = 0;
        while (true) {
            const bool lands_on_end = remaining - k < k_min;
            const double k_try = lands_on_end ? remaining : k;
            if (!(t_n + k_try > t_n)) {
                std::ostringstream os;
                os << "step " << k_try << " no longer advances t=" << t_n;
                throw SolverError(ErrorKind::MinStepReached, os.str());
            }
            StepAttempt a = attempt_step(p, w, k_try, cfg);

            if (a.verdict == Verdict::Halve) {
                ++stats.rejected;
                if (a.failure == ErrorKind::NewtonDiverged || a.failure == ErrorKind::SingularLinearSystem) {
                    ++stats.newton_failures;
                } else if (a.failure == ErrorKind::DegenerateBeta) {
                    ++stats.degenerate_beta;
                }
                ++halvings;
                k = 0.5 * k_try;
                if (halvings > cfg.max_halvings_per_step || k < k_min) {
                    std::ostringstream os;
                    os << "step size fell below k_min=" << k_min << " at t=" << t_n << " after " << halvings
                       << " halvings (last est " << a.est << ")";
                    throw SolverError(ErrorKind::MinStepReached, os.str());
                }
                continue;
            }

            if (!all_finite(a.y_third)) {
                std::ostringstream os;
                os << "accepted state is non-finite at t=" << t_n + k_try;
                throw SolverError(ErrorKind::NonFiniteState, os.str());
            }
            const double t_new = lands_on_end ? cfg.t_end : t_n + k_try;
            traj.append(t_new, a.y_third, a.est, k_try);
            w = w.advance(t_new, std::move(a.y_third));
            ++stats.accepted;
            stats.min_k_used = std::min(stats.min_k_used, k_try);
            stats.max_k_used = std::max(stats.max_k_used, k_try);
            if (a.verdict == Verdict::AcceptAndDouble) {
                ++stats.doublings;
                k = 2.0 * k_try;
            } else {
                k = k_try;
            }
            break;
        }
    }

    if (stats.accepted == 0) stats.min_k_used = 0.0;
    traj.steps_taken = traj.size() - 1;
    traj.rejections = stats.rejected;
    return run;
}

}  // namespace fie23

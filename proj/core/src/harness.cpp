#include "fie23/harness.hpp"

#include "fie23/adaptive.hpp"
#include "fie23/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace fie23 {
namespace {

// Errors this close to the size of the solution carry no order information.
constexpr double kRoundoffFactor = 64.0 * std::numeric_limits<double>::epsilon();

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

}  // namespace

bool ConvergenceReport::any_at_roundoff() const noexcept {
    return std::any_of(rows.begin(), rows.end(), [](const ConvergenceRow& r) { return r.at_roundoff; });
}

ConvergenceReport convergence_table(ConstantStepMethod method, const ProblemSpec& spec,
                                    std::span<const std::size_t> steps_list) {
    if (!spec.problem.has_exact()) {
        throw SolverError(ErrorKind::InvalidConfig, "convergence tables need an exact solution");
    }
    for (std::size_t i = 0; i < steps_list.size(); ++i) {
        if (steps_list[i] == 0 || (i > 0 && steps_list[i] <= steps_list[i - 1])) {
            throw SolverError(ErrorKind::InvalidConfig, "step counts must be positive and strictly increasing");
        }
    }

    ConvergenceReport report;
    report.method = method;
    report.problem = spec.problem.name;
    const double scale = std::max(1.0, max_norm(spec.problem.exact(spec.t_end)));
    for (std::size_t steps : steps_list) {
        const SolverConfig cfg = spec.config(1.0, (spec.t_end - spec.t_begin) / static_cast<double>(steps));
        const ConstantStepRun run = solve_constant_step(method, spec.problem, cfg, spec.initial_state);

        ConvergenceRow row;
        row.steps = steps;
        row.final_error = *spec.final_error(run.trajectory);
        row.at_roundoff = row.final_error <= kRoundoffFactor * scale;
        if (!report.rows.empty()) {
            const ConvergenceRow& prev = report.rows.back();
            if (!row.at_roundoff && !prev.at_roundoff) {
                row.error_ratio = prev.final_error / row.final_error;
                row.order = std::log2(*row.error_ratio);
            }
        }
        report.rows.push_back(row);
    }
    return report;
}

void print_report(std::ostream& os, const ConvergenceReport& report) {
    os << to_string(report.method) << " convergence on " << report.problem << "\n";
    os << "Steps      Error          Error Ratio    Order\n";
    for (const ConvergenceRow& r : report.rows) {
        char line[160];
        std::snprintf(line, sizeof line, "%-10zu %-14s %-14s %s%s\n", r.steps,
                      format("%.5E", r.final_error).c_str(),
                      r.error_ratio ? format("%.5f", *r.error_ratio).c_str() : "-",
                      r.order ? format("%.5f", *r.order).c_str() : "-", r.at_roundoff ? "  (round-off)" : "");
        os << line;
    }
}

ComparisonReport compare_adaptive_constant(const ProblemSpec& spec, double tol, double dt0,
                                           std::span<const std::size_t> constant_steps) {
    ComparisonReport report;
    report.problem = spec.problem.name;

    std::optional<ReferenceSolution> reference;
    if (spec.problem.has_exact()) {
        report.error_source = "exact";
    } else {
        const double span = spec.t_end - spec.t_begin;
        reference = validated_reference(spec, spec.t_end, std::min(1e-2, span / 1000.0), 1e-8, 12);
        report.error_source = "rk4 reference (dt=" + format("%.3g", reference->dt) +
                              (reference->converged ? ")" : ", not converged)");
    }
    auto error_of = [&](const Trajectory& traj) {
        const State target =
            reference ? reference->final_state : spec.problem.exact(traj.final_time());
        return spec.error_between(traj.final_state(), target);
    };

    const AdaptiveRun adaptive = solve_filtered_ie23(spec.problem, spec.config(tol, dt0), spec.initial_state);
    ComparisonRow first;
    first.method = "filtered-ie23";
    first.setting = "tol=" + format("%g", tol);
    first.steps = adaptive.trajectory.steps_taken;
    first.rejections = adaptive.stats.rejected;
    first.final_time = adaptive.trajectory.final_time();
    first.final_first_component = adaptive.trajectory.final_state()[0];
    first.error = error_of(adaptive.trajectory);
    report.rows.push_back(first);

    std::vector<std::size_t> levels(constant_steps.begin(), constant_steps.end());
    if (levels.empty()) levels.push_back(first.steps);
    for (std::size_t steps : levels) {
        const double dt = (spec.t_end - spec.t_begin) / static_cast<double>(steps);
        const ConstantStepRun run = solve_ie_pre_post_3(spec.problem, spec.config(tol, dt), spec.initial_state);
        ComparisonRow row;
        row.method = "ie-pre-post-3";
        row.setting = "dt=" + format("%g", dt);
        row.steps = run.trajectory.steps_taken;
        row.final_time = run.trajectory.final_time();
        row.final_first_component = run.trajectory.final_state()[0];
        row.error = error_of(run.trajectory);
        report.rows.push_back(row);
    }
    return report;
}

void print_report(std::ostream& os, const ComparisonReport& report) {
    os << "Comparison on " << report.problem << " (errors against " << report.error_source << ")\n";
    os << "Method          Setting          Steps     Rejected  Final t      Final y0         Error\n";
    for (const ComparisonRow& r : report.rows) {
        char line[200];
        std::snprintf(line, sizeof line, "%-15s %-16s %-9zu %-9s %-12g %-16.9g %.5E\n", r.method.c_str(),
                      r.setting.c_str(), r.steps,
                      r.rejections ? std::to_string(*r.rejections).c_str() : "-", r.final_time,
                      r.final_first_component, r.error);
        os << line;
    }
}

}  // namespace fie23

#pragma once

// Convergence tables and adaptive-versus-constant comparisons.

#include "fie23/problems.hpp"
#include "fie23/steppers.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fie23 {

struct ConvergenceRow {
    std::size_t steps = 0;
    double final_error = 0.0;
    /// error[i-1] / error[i] and log2 of it; empty on the first row and
    /// whenever either error sits at round-off level.
    std::optional<double> error_ratio;
    std::optional<double> order;
    bool at_roundoff = false;
};

struct ConvergenceReport {
    ConstantStepMethod method = ConstantStepMethod::IePrePost3;
    std::string problem;
    std::vector<ConvergenceRow> rows;

    [[nodiscard]] bool any_at_roundoff() const noexcept;
};

/// Runs `method` with (t_end - t_begin) / steps for every entry of
/// steps_list and measures the final error against the exact solution.
/// Throws InvalidConfig if steps_list is not strictly increasing or the
/// problem has no exact solution.
[[nodiscard]] ConvergenceReport convergence_table(ConstantStepMethod method, const ProblemSpec& spec,
                                                  std::span<const std::size_t> steps_list);

/// "Steps  Error  Error Ratio  Order" table, errors in %.5E.
void print_report(std::ostream& os, const ConvergenceReport& report);

struct ComparisonRow {
    std::string method;
    std::string setting;  // tolerance or step size
    std::size_t steps = 0;
    std::optional<std::size_t> rejections;
    double final_time = 0.0;
    double final_first_component = 0.0;
    double error = 0.0;
};

struct ComparisonReport {
    std::string problem;
    /// "exact" or "rk4 reference (dt=...)".
    std::string error_source;
    std::vector<ComparisonRow> rows;
};

/// Filtered-IE23 at (tol, dt0) followed by IE-Pre-Post-3 at each entry of
/// constant_steps (the adaptive step count when empty). Problems without a
/// closed form are measured against validated_reference.
[[nodiscard]] ComparisonReport compare_adaptive_constant(const ProblemSpec& spec, double tol, double dt0,
                                                         std::span<const std::size_t> constant_steps = {});

void print_report(std::ostream& os, const ComparisonReport& report);

}  // namespace fie23

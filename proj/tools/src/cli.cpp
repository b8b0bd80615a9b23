#include "fie23/cli.hpp"

#include "fie23/adaptive.hpp"
#include "fie23/csv.hpp"
#include "fie23/errors.hpp"
#include "fie23/harness.hpp"
#include "fie23/problems.hpp"
#include "fie23/steppers.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

namespace fie23 {
namespace {

const std::map<std::string, ConstantStepMethod> kConstantMethods{
    {"ie-pre-2", ConstantStepMethod::IePre2},
    {"ie-pre-post-3", ConstantStepMethod::IePrePost3},
    {"rk4-ref", ConstantStepMethod::Rk4Reference},
    {"rk3", ConstantStepMethod::Rk3},
};
constexpr const char* kAdaptiveMethod = "filtered-ie23";

/// Thrown for bad arguments discovered after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

ParameterMap parse_parameters(const std::vector<std::string>& items) {
    ParameterMap params;
    for (const std::string& item : items) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + item + "'");
        const std::string value = item.substr(eq + 1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc{} || ptr != value.data() + value.size()) {
            throw UsageError("--param " + item.substr(0, eq) + ": '" + value + "' is not a number");
        }
        params[item.substr(0, eq)] = v;
    }
    return params;
}

struct SolveArgs {
    std::string problem;
    std::string method = kAdaptiveMethod;
    double tol = 1e-3;
    double dt0 = 1e-2;
    double t0 = 0.0;
    double t1 = 0.0;
    std::vector<std::string> params;
    std::string out;
};

struct ConvergenceArgs {
    std::string problem;
    std::string method = "ie-pre-post-3";
    std::vector<std::size_t> steps{40, 80, 160, 320, 640, 1280, 2560};
    std::vector<std::string> params;
};

struct CompareArgs {
    std::string problem;
    double tol = 5e-3;
    double dt0 = 1e-2;
    std::vector<std::size_t> steps;
    std::vector<std::string> params;
};

int run_solve(const SolveArgs& a, const CLI::App& cmd, std::ostream& out) {
    const ProblemSpec spec = make_problem(a.problem, parse_parameters(a.params));
    SolverConfig cfg = spec.config(a.tol, a.dt0);
    if (cmd.count("--t0") > 0) cfg.t_begin = a.t0;
    if (cmd.count("--t1") > 0) cfg.t_end = a.t1;

    Trajectory traj;
    std::string stats;
    if (a.method == kAdaptiveMethod) {
        AdaptiveRun run = solve_filtered_ie23(spec.problem, cfg, spec.initial_state);
        stats = std::to_string(run.stats.accepted) + " accepted, " + std::to_string(run.stats.rejected) +
                " rejected, " + std::to_string(run.stats.doublings) + " doublings, k in [" +
                fmt("%.6g", run.stats.min_k_used) + ", " + fmt("%.6g", run.stats.max_k_used) + "]";
        traj = std::move(run.trajectory);
    } else {
        ConstantStepRun run = solve_constant_step(kConstantMethods.at(a.method), spec.problem, cfg, spec.initial_state);
        stats = std::to_string(run.trajectory.steps_taken) + " steps of " + fmt("%.6g", run.dt);
        traj = std::move(run.trajectory);
    }

    out << "problem " << spec.problem.name << ", method " << a.method << "\n";
    out << "steps   " << stats << "\n";
    out << "final t " << fmt("%.17g", traj.final_time()) << "\n";
    out << "final y";
    for (Eigen::Index i = 0; i < traj.final_state().size(); ++i) out << ' ' << fmt("%.17g", traj.final_state()[i]);
    out << "\n";
    if (spec.problem.has_exact()) {
        out << "error   " << fmt("%.5E", spec.error_between(traj.final_state(), spec.problem.exact(traj.final_time())))
            << "\n";
    }
    if (!a.out.empty()) {
        emit_csv(traj, a.out);
        out << "wrote " << a.out << " (" << traj.size() << " rows)\n";
    }
    return kExitOk;
}

int run_convergence(const ConvergenceArgs& a, std::ostream& out) {
    const auto method = kConstantMethods.find(a.method);
    if (method == kConstantMethods.end()) throw UsageError("convergence needs a constant-step method");
    const ProblemSpec spec = make_problem(a.problem, parse_parameters(a.params));
    print_report(out, convergence_table(method->second, spec, a.steps));
    return kExitOk;
}

int run_compare(const CompareArgs& a, std::ostream& out) {
    const ProblemSpec spec = make_problem(a.problem, parse_parameters(a.params));
    print_report(out, compare_adaptive_constant(spec, a.tol, a.dt0, a.steps));
    return kExitOk;
}

int run_problems(std::ostream& out) {
    for (const std::string& name : problem_names()) {
        const ProblemSpec spec = make_problem(name);
        out << name << ": dimension " << spec.problem.dimension << ", range [" << spec.t_begin << ", " << spec.t_end
            << "]";
        if (!spec.parameters.empty()) {
            out << ", parameters";
            for (const auto& [key, value] : spec.parameters) out << ' ' << key << '=' << value;
        }
        out << (spec.problem.has_exact() ? ", exact solution" : ", no exact solution") << "\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Filtered Implicit Euler integrators"};
    app.name("fie23");
    app.require_subcommand(1);

    std::vector<std::string> methods{kAdaptiveMethod};
    for (const auto& [name, m] : kConstantMethods) methods.push_back(name);

    SolveArgs solve;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Integrate one problem and optionally write a CSV trajectory");
    solve_cmd->add_option("--problem", solve.problem, "Problem name")->required();
    solve_cmd->add_option("--method", solve.method, "Integrator")->check(CLI::IsMember(methods))->capture_default_str();
    solve_cmd->add_option("--tol", solve.tol, "Error tolerance per unit step")->capture_default_str();
    solve_cmd->add_option("--dt0", solve.dt0, "Initial (or constant) step")->capture_default_str();
    solve_cmd->add_option("--t0", solve.t0, "Start time (default: problem range)");
    solve_cmd->add_option("--t1", solve.t1, "End time (default: problem range)");
    solve_cmd->add_option("--param", solve.params, "Problem parameter key=value")->take_all();
    solve_cmd->add_option("--out", solve.out, "CSV output path");

    ConvergenceArgs conv;
    CLI::App* conv_cmd = app.add_subcommand("convergence", "Constant-step convergence table");
    conv_cmd->add_option("--problem", conv.problem, "Problem name")->required();
    conv_cmd->add_option("--method", conv.method, "Constant-step integrator")->capture_default_str();
    conv_cmd->add_option("--steps", conv.steps, "Comma separated step counts")->delimiter(',')->capture_default_str();
    conv_cmd->add_option("--param", conv.params, "Problem parameter key=value")->take_all();

    CompareArgs cmp;
    CLI::App* cmp_cmd = app.add_subcommand("compare", "Filtered-IE23 against IE-Pre-Post-3");
    cmp_cmd->add_option("--problem", cmp.problem, "Problem name")->required();
    cmp_cmd->add_option("--tol", cmp.tol, "Adaptive tolerance")->capture_default_str();
    cmp_cmd->add_option("--dt0", cmp.dt0, "Adaptive initial step")->capture_default_str();
    cmp_cmd->add_option("--steps", cmp.steps, "Constant-step counts (default: the adaptive count)")->delimiter(',');
    cmp_cmd->add_option("--param", cmp.params, "Problem parameter key=value")->take_all();

    CLI::App* list_cmd = app.add_subcommand("problems", "List registered problems");

    std::vector<const char*> argv{"fie23"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(solve, *solve_cmd, out);
        if (conv_cmd->parsed()) return run_convergence(conv, out);
        if (cmp_cmd->parsed()) return run_compare(cmp, out);
        if (list_cmd->parsed()) return run_problems(out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SolverError& e) {
        err << "error: " << e.what() << "\n";
        const bool usage = e.kind() == ErrorKind::UnknownProblem || e.kind() == ErrorKind::InvalidConfig;
        return usage ? kExitUsage : kExitSolverFailure;
    }
    return kExitUsage;
}

}  // namespace fie23

#include "fie23/newton.hpp"

#include "fie23/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace fie23 {
namespace {

// Reciprocal condition estimate below which I - kJ is treated as singular.
constexpr double kSingularRcond = 64.0 * std::numeric_limits<double>::epsilon();

}  // namespace

Matrix finite_difference_jacobian(const OdeProblem& p, double t, const State& y) {
    const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
    const State f0 = p.f(t, y);
    Matrix jac(y.size(), y.size());
    State shifted = y;
    for (Eigen::Index j = 0; j < y.size(); ++j) {
        const double h = root_eps * (1.0 + std::abs(y[j]));
        shifted[j] = y[j] + h;
        jac.col(j) = (p.f(t, shifted) - f0) / h;
        shifted[j] = y[j];
    }
    return jac;
}

NewtonOutcome implicit_euler_stage(const OdeProblem& p, double t_next, double k_n, const State& y_tilde,
                                   const State& y_guess, const NewtonSettings& settings) {
    if (!(k_n > 0.0)) {
        throw SolverError(ErrorKind::NonPositiveStep, "implicit stage needs a positive step");
    }
    if (y_tilde.size() != p.dimension || y_guess.size() != p.dimension) {
        throw SolverError(ErrorKind::DimensionMismatch, "implicit stage operands do not match the problem");
    }

    const Matrix identity = Matrix::Identity(p.dimension, p.dimension);
    auto residual = [&](const State& y) -> State { return y - y_tilde - k_n * p.f(t_next, y); };

    NewtonOutcome out{y_guess, 0, 0.0};
    State g = residual(out.y);
    out.residual_norm = max_norm(g);

    while (true) {
        if (!all_finite(out.y) || !std::isfinite(out.residual_norm)) {
            throw SolverError(ErrorKind::NewtonDiverged, "non-finite Newton iterate");
        }
        if (out.residual_norm <= settings.tol * (1.0 + max_norm(out.y))) {
            return out;
        }
        if (out.iterations >= settings.max_iter) {
            std::ostringstream os;
            os << "no convergence after " << out.iterations << " iterations (residual " << out.residual_norm
               << ")";
            throw SolverError(ErrorKind::NewtonDiverged, os.str());
        }

        const Matrix jac = p.has_jacobian() ? p.jacobian(t_next, out.y) : finite_difference_jacobian(p, t_next, out.y);
        const Eigen::PartialPivLU<Matrix> lu(identity - k_n * jac);
        if (!(lu.rcond() > kSingularRcond)) {
            throw SolverError(ErrorKind::SingularLinearSystem, "Newton matrix I - k J is numerically singular");
        }
        out.y -= lu.solve(g);
        ++out.iterations;
        g = residual(out.y);
        out.residual_norm = max_norm(g);
    }
}

}  // namespace fie23

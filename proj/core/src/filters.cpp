#include "fie23/filters.hpp"

#include "fie23/errors.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace fie23 {
namespace {

constexpr double kDegenerateBetaThreshold = 1e-12;

void require_positive(std::initializer_list<double> steps) {
    for (double k : steps) {
        if (!(k > 0.0) || !std::isfinite(k)) {
            throw SolverError(ErrorKind::NonPositiveStep, "step sizes must be positive and finite");
        }
    }
}

double beta_numerator(double kn, double k1, double k2) {
    return -kn * kn * (k1 + kn) * (k2 + 2.0 * (k1 + kn));
}

double interpolated_derivative_denominator(double kn, double k1, double k2, double k3) {
    return 2.0 * k1 *
           (2.0 * (k1 + kn) * k2 * k2 + (k1 * k1 - 5.0 * kn * k1 - 7.0 * kn * kn) * k2 +
            3.0 * k3 * (k2 - kn) * (k1 + kn) - 2.0 * k1 * kn * (k1 + kn));
}

double cubic_exact_denominator(double kn, double k1, double k2, double k3) {
    return 2.0 * k1 *
           (2.0 * (k1 + kn) * k2 * k2 + (k1 * k1 - 2.0 * kn * k1 - 4.0 * kn * kn) * k2 +
            3.0 * k3 * (k2 - kn) * (k1 + kn) - kn * (k1 + kn) * (2.0 * k1 + 3.0 * kn));
}

double denominator(PostFilterForm form, double kn, double k1, double k2, double k3) {
    return form == PostFilterForm::InterpolatedDerivative ? interpolated_derivative_denominator(kn, k1, k2, k3)
                                             : cubic_exact_denominator(kn, k1, k2, k3);
}

using Wide = long double;

// Second derivative of the quadratic through three points.

Wide interpolant_second_derivative(Wide t0, Wide t1, Wide t2, Wide y0, Wide y1, Wide y2) {
    const Wide d01 = (y1 - y0) / (t1 - t0);
    const Wide d12 = (y2 - y1) / (t2 - t1);
    return 2 * (d12 - d01) / (t2 - t0);
}

}  // namespace

State curvature(double k_prev, double k_cur, const State& y_prev, const State& y_mid, const State& y_next) {
    require_positive({k_prev, k_cur});
    if (y_prev.size() != y_mid.size() || y_mid.size() != y_next.size()) {
        throw SolverError(ErrorKind::DimensionMismatch, "curvature operands differ in dimension");
    }
    const double sum = k_prev + k_cur;
    return (2.0 * k_prev / sum) * y_next - 2.0 * y_mid + (2.0 * k_cur / sum) * y_prev;
}

double alpha_coeff(double k_n, double k_nm1, double k_nm2) {
    require_positive({k_n, k_nm1, k_nm2});
    return k_n * k_n / (k_nm1 * k_nm2);
}

FilterCoefficients beta_coeff(double k_n, double k_nm1, double k_nm2, double k_nm3, PostFilterForm form) {
    require_positive({k_n, k_nm1, k_nm2, k_nm3});

    FilterCoefficients c;
    c.alpha = alpha_coeff(k_n, k_nm1, k_nm2);
    c.beta_num = beta_numerator(k_n, k_nm1, k_nm2);
    c.beta_den = denominator(form, k_n, k_nm1, k_nm2, k_nm3);

    // Both polynomials are homogeneous of degree 4; judge degeneracy on
    // normalised steps so the test does not depend on the time unit.
    const double s = std::max({k_n, k_nm1, k_nm2, k_nm3});
    const double num = beta_numerator(k_n / s, k_nm1 / s, k_nm2 / s);
    const double den = denominator(form, k_n / s, k_nm1 / s, k_nm2 / s, k_nm3 / s);
    if (!(std::abs(den) >= kDegenerateBetaThreshold * std::max(1.0, std::abs(num)))) {
        throw SolverError(ErrorKind::DegenerateBeta, "post-filter denominator vanishes for this step sequence");
    }
    c.beta = num / den;
    return c;
}

double beta_oracle(double k_n, double k_nm1, double k_nm2, double k_nm3) {
    require_positive({k_n, k_nm1, k_nm2, k_nm3});
    // Extended precision: the residual cancels between cubes of the grid times.
    const Wide s = std::max({k_n, k_nm1, k_nm2, k_nm3});
    const Wide kn = k_n / s, k1 = k_nm1 / s, k2 = k_nm2 / s, k3 = k_nm3 / s;

    // Grid t_{n-3} = 0, t_{n-2} = k_{n-3}, ..., t_{n+1}.
    const Wide t[5] = {0, k3, k3 + k2, k3 + k2 + k1, k3 + k2 + k1 + kn};
    Wide y[5];
    for (int i = 0; i < 5; ++i) y[i] = t[i] * t[i] * t[i];
    const Wide dy_next = 3 * t[4] * t[4];

    const Wide kappa_prev = k2 * k1 * interpolant_second_derivative(t[1], t[2], t[3], y[1], y[2], y[3]);
    const Wide alpha = kn * kn / (k1 * k2);
    const Wide y_tilde = y[3] - alpha * kappa_prev / 2;
    // y-independent rhs: the implicit stage is explicit.
    const Wide y_second = y_tilde + kn * dy_next;
    const Wide kappa_next = k1 * kn * interpolant_second_derivative(t[2], t[3], t[4], y[2], y[3], y_second);

    auto residual = [&](Wide beta) { return y_second - beta * (kappa_next - kappa_prev) - y[4]; };
    const Wide r0 = residual(0);
    const Wide slope = residual(1) - r0;
    if (!(std::abs(slope) >= kDegenerateBetaThreshold * std::max<Wide>(1, std::abs(r0)))) {
        throw SolverError(ErrorKind::DegenerateBeta, "cubic exactness condition does not determine beta");
    }
    return static_cast<double>(-r0 / slope);
}

State pre_filter(const HistoryWindow& w, double alpha) {
    const State kappa_prev =
        curvature(w.step_back(2), w.step_back(1), w.state(1), w.state(2), w.state(3));
    return w.latest_state() - (0.5 * alpha) * kappa_prev;
}

State post_filter(const State& y_next, const HistoryWindow& w, double k_n, double beta) {
    const State kappa_prev =
        curvature(w.step_back(2), w.step_back(1), w.state(1), w.state(2), w.state(3));
    const State kappa_next = curvature(w.step_back(1), k_n, w.state(2), w.state(3), y_next);
    return y_next - beta * (kappa_next - kappa_prev);
}

double error_estimate(const State& y_second, const State& y_third) {
    if (y_second.size() != y_third.size()) {
        throw SolverError(ErrorKind::DimensionMismatch, "error estimate operands differ in dimension");
    }
    return max_norm(y_third - y_second);
}

}  // namespace fie23

#pragma once

// Variable-step Robert-Asselin type filters around an Implicit Euler solve.
//
// Notation: k_n is the step being attempted (t_n -> t_{n+1}), k_{n-1} the
// last accepted step and so on. The discrete curvature of three points is
// the second derivative of their quadratic interpolant scaled by the
// product of the two steps it spans:
//
//   kappa_n = 2 k_{n-1}/(k_n + k_{n-1}) y_{n+1} - 2 y_n + 2 k_n/(k_n + k_{n-1}) y_{n-1}
//
// One filtered step is
//   pre-filter   y~_n    = y_n - (alpha_n / 2) kappa_{n-1}
//   IE solve     y_{n+1} = y~_n + k_n f(t_{n+1}, y_{n+1})
//   post-filter  y3_{n+1} = y_{n+1} - beta_n (kappa_n - kappa_{n-1})
// and |y3_{n+1} - y_{n+1}| is the embedded error estimate.

#include "fie23/ode.hpp"

namespace fie23 {

struct FilterCoefficients {
    double alpha = 0.0;
    double beta = 0.0;
    double beta_num = 0.0;
    double beta_den = 0.0;
};

/// Scaled discrete curvature through (y_prev, y_mid, y_next) where
/// k_prev = t_mid - t_prev and k_cur = t_next - t_mid.
/// Throws NonPositiveStep or DimensionMismatch.
[[nodiscard]] State curvature(double k_prev, double k_cur, const State& y_prev, const State& y_mid,
                              const State& y_next);

/// Pre-filter coefficient alpha_n = k_n^2 / (k_{n-1} k_{n-2}); makes Steps 1-2
/// second order on any step sequence. Reduces to 1 on uniform steps.
[[nodiscard]] double alpha_coeff(double k_n, double k_nm1, double k_nm2);

/// Pre- and post-filter coefficients for the attempted step k_n.
///
/// beta_num = -k_n^2 (k_{n-1} + k_n)(k_{n-2} + 2(k_{n-1} + k_n)) for both forms.
/// The InterpolatedDerivative denominator is
///   2 k_{n-1} [ 2(k_{n-1}+k_n) k_{n-2}^2 + (k_{n-1}^2 - 5 k_n k_{n-1} - 7 k_n^2) k_{n-2}
///             + 3 k_{n-3} (k_{n-2} - k_n)(k_{n-1} + k_n) - 2 k_{n-1} k_n (k_{n-1} + k_n) ]
/// and the cubic-exact one is the same expression with k_{n-3} replaced by
/// k_{n-3} + k_n. Both give beta = 5/11 on uniform steps.
///
/// Throws NonPositiveStep, or DegenerateBeta when the denominator vanishes
/// relative to the numerator (evaluated on steps normalised by the largest).
[[nodiscard]] FilterCoefficients beta_coeff(double k_n, double k_nm1, double k_nm2, double k_nm3,
                                            PostFilterForm form = PostFilterForm::CubicExact);

/// Independent route to the cubic-exact beta: lays out the grid
/// t = 0, k_{n-3}, +k_{n-2}, +k_{n-1}, +k_n with y = t^3 and rhs 3t^2, runs
/// Steps 1-3 from first principles (divided differences, no call into the
/// closed forms) and solves the exactness condition y3_{n+1} = t_{n+1}^3,
/// which is linear in beta. Throws NonPositiveStep or DegenerateBeta.
[[nodiscard]] double beta_oracle(double k_n, double k_nm1, double k_nm2, double k_nm3);

/// y~_n = y_n - (alpha / 2) kappa_{n-1}, with kappa_{n-1} built from the three
/// newest window states.
[[nodiscard]] State pre_filter(const HistoryWindow& w, double alpha);

/// y_next - beta (kappa_n - kappa_{n-1}).
[[nodiscard]] State post_filter(const State& y_next, const HistoryWindow& w, double k_n, double beta);

/// Max-norm of the difference. Throws DimensionMismatch.
[[nodiscard]] double error_estimate(const State& y_second, const State& y_third);

}  // namespace fie23

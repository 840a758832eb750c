#pragma once

#include <functional>

namespace invctl::special {

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
/// Series expansion for x < a + 1, Lentz continued fraction for Q otherwise.
/// Absolute error <= 1e-10 for a in (0, 1e5], x >= 0.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration over [lo, hi].
/// Bisects the interval with the largest error estimate until the total
/// estimate falls below max(abs_tol, rel_tol * |value|) or max_intervals is reached.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           double abs_tol = 1e-12, double rel_tol = 1e-12,
                           int max_intervals = 2000);

}  // namespace invctl::special

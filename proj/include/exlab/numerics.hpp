#pragma once

#include <functional>

namespace exlab::numerics {

using Integrand = std::function<double(double)>;

/// Adaptive Simpson quadrature on [a, b] with absolute tolerance `tol`.
/// Refinement stops at `max_depth` bisections; the Richardson-corrected
/// estimate is returned.
double adaptive_simpson(const Integrand& f, double a, double b, double tol = 1e-10,
                        int max_depth = 50);

/// Integral of f over (0, inf) via t = (u / (1 - u))^q on (0, 1).
///
/// q = 2 absorbs t^{-1/2} singularities at the origin and t^{-3/2} tails;
/// a density behaving like t^nu near 0 needs q >= 1 / (1 + nu).
double integrate_half_line(const Integrand& f, double tol = 1e-10, double q = 2.0);

/// Integral of f over (a, inf) as the half-line integral of f(a + t).
double integrate_tail(const Integrand& f, double a, double tol = 1e-10, double q = 2.0);

/// log B(x, y) for x, y > 0.
double log_beta(double x, double y);
double beta(double x, double y);

/// coth(x) / x, switching to its Laurent series for x < 1e-4.
double coth_over_x(double x);

/// Central difference (f(x + h) - f(x - h)) / 2h.
double central_difference(const Integrand& f, double x, double h);

} // namespace exlab::numerics

#include "exlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace exlab::numerics {

namespace {

struct Panel {
  double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const Integrand& f, const Panel& p, double tol, int depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, m, p.fa, flm, p.fm);
  const double right = simpson(m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol || !(m > p.a && m < p.b)) {
    return left + right + delta / 15.0;
  }
  return refine(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
         refine(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const Integrand& f, double a, double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  if (b < a) return -adaptive_simpson(f, b, a, tol, max_depth);
  // Seed with four panels so that narrow features away from the midpoint are
  // not missed by the first comparison.
  constexpr int kPanels = 4;
  const double width = (b - a) / kPanels;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == kPanels) ? b : lo + width;
    const double flo = f(lo);
    const double fmid = f(0.5 * (lo + hi));
    const double fhi = f(hi);
    total += refine(f, {lo, hi, flo, fmid, fhi, simpson(lo, hi, flo, fmid, fhi)}, tol / kPanels,
                    max_depth);
  }
  return total;
}

double integrate_half_line(const Integrand& f, double tol, double q) {
  // Endpoints are pulled inside by 1e-14 in u; the mapped integrand is
  // bounded there for the integrands this is used on.
  constexpr double kEdge = 1e-14;
  const auto mapped = [&](double u) {
    u = std::clamp(u, kEdge, 1.0 - kEdge);
    const double r = u / (1.0 - u);
    const double t = std::pow(r, q);
    const double dt = q * std::pow(r, q - 1.0) / ((1.0 - u) * (1.0 - u));
    const double ft = f(t);
    if (ft == 0.0) return 0.0;
    return ft * dt;
  };
  return adaptive_simpson(mapped, 0.0, 1.0, tol, 60);
}

double integrate_tail(const Integrand& f, double a, double tol, double q) {
  return integrate_half_line([&](double t) { return f(a + t); }, tol, q);
}

double log_beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("log_beta: arguments must be positive");
  return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
}

double beta(double x, double y) { return std::exp(log_beta(x, y)); }

double coth_over_x(double x) {
  if (x < 1e-4) {
    const double x2 = x * x;
    return 1.0 / x2 + 1.0 / 3.0 - x2 / 45.0;
  }
  return 1.0 / (x * std::tanh(x));
}

double central_difference(const Integrand& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace exlab::numerics

#include "exlab/analytics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "exlab/numerics.hpp"

namespace exlab::analytics {

double lt_rbm(double mu, double alpha, double beta) {
  if (!(mu > 0.0)) throw std::invalid_argument("lt_rbm: mu must be positive");
  if (alpha < 0.0 || beta < 0.0) throw std::invalid_argument("lt_rbm: alpha, beta must be >= 0");
  return 2.0 * mu / (std::sqrt(2.0 * alpha + mu * mu) + std::sqrt(2.0 * beta + mu * mu));
}

JointLT joint_lt_rbm(double mu) {
  return {[mu](double a, double b) { return lt_rbm(mu, a, b); },
          [mu](double g) { return lt_rbm(mu, g, g); }};
}

JointLT joint_lt_from_green(const DiffusionModel& model) {
  return {[model](double a, double b) { return lt_joint_from_green(model, a, b); },
          [model](double g) { return lt_diagonal_from_green(model, g); }};
}

double joint_density_rbm(double mu, double t, double s) {
  const double v = t + s;
  if (!(v > 0.0)) throw std::invalid_argument("joint_density_rbm: t + s must be positive");
  return mu / std::sqrt(2.0 * std::numbers::pi * v * v * v) * std::exp(-0.5 * mu * mu * v);
}

double lt_reflbm01_d0(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("lt_reflbm01_d0: alpha must be positive");
  const double x = std::sqrt(2.0 * alpha);
  if (x < 1e-4) return 1.0 - x * x / 3.0;
  return std::tanh(x) / x;
}

double density_d0_sqou(double gamma, double nu, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("density_d0_sqou: t must be positive");
  return DiffusionModel::sq_ou(gamma, nu).d0_density(t);
}

double class_k_residual(const JointLT& lt, double alpha, double beta) {
  if (alpha < 0.0 || beta < 0.0)
    throw std::invalid_argument("class_k_residual: alpha, beta must be >= 0");
  if (alpha == beta) throw std::invalid_argument("class_k_residual: requires alpha != beta");
  const double integral = numerics::adaptive_simpson(lt.diag, beta, alpha, 1e-10);
  return std::abs(lt.eval(alpha, beta) - integral / (alpha - beta));
}

double density_from_sum(const std::function<double(double)>& p, double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw std::invalid_argument("density_from_sum: x, y must be positive");
  return p(x + y) / (x + y);
}

double levy_tail(const DiffusionModel& model, double t) {
  if (!model.has_d0_density())
    throw std::invalid_argument("levy_tail: no closed-form d0 density for " + std::string(model.name()));
  return model.total_mass() * model.d0_density(t);
}

double v_density(const DiffusionModel& model, double v) {
  if (!(v > 0.0)) throw std::invalid_argument("v_density: v must be positive");
  switch (model.kind()) {
  case ModelKind::Rbm: {
    const double mu = model.mu();
    return mu * std::exp(-0.5 * mu * mu * v) / std::sqrt(2.0 * std::numbers::pi * v);
  }
  case ModelKind::SqOu: {
    const auto tail = [&](double t) { return levy_tail(model, t); };
    const double levy_density = -numerics::central_difference(tail, v, 1e-6 * v);
    return v * levy_density / model.total_mass();
  }
  case ModelKind::ReflBm01: break;
  }
  throw std::invalid_argument("v_density: no closed-form Levy tail for " + std::string(model.name()));
}

double SpectralMixture::explicit_weight() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight;
  return s;
}

double SpectralMixture::d0_density(double t) const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight * a.rate * std::exp(-a.rate * t);
  return s;
}

double SpectralMixture::v_density(double v) const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight * a.rate * a.rate * v * std::exp(-a.rate * v);
  return s;
}

SpectralMixture sqou_spectral(double gamma, double nu, std::size_t truncation) {
  DiffusionModel::sq_ou(gamma, nu); // validates the parameters
  if (truncation < 1) throw std::invalid_argument("sqou_spectral: truncation K must be >= 1");
  // w(k) = Gamma(k - nu) / (Gamma(-nu)^2 Gamma(1 + nu) Gamma(k + 1) (k - nu)), as a
  // smooth function of k for the tail estimate.
  const double log_norm = -2.0 * std::lgamma(-nu) - std::lgamma(1.0 + nu);
  const auto weight = [&](double k) {
    const double ratio = boost::math::tgamma_delta_ratio(k - nu, 1.0 + nu);
    return std::exp(log_norm) * ratio / (k - nu);
  };

  SpectralMixture mix;
  mix.normalized = true;
  mix.atoms.reserve(truncation + 1);
  for (std::size_t k = 0; k <= truncation; ++k) {
    const double kk = static_cast<double>(k);
    mix.atoms.push_back({2.0 * gamma * (kk - nu), weight(kk)});
  }

  // Sum over k > K by the midpoint Euler-Maclaurin formula:
  //   sum f(k) = int_{K+1/2}^inf f + f'(K+1/2) / 24 - 7 f'''(K+1/2) / 5760 + ...
  // The integral uses x = a w^{-q}, q = 1 / (1 + nu), under which the
  // x^{-(nu + 2)} decay of f becomes bounded near w = 0.
  const double a = static_cast<double>(truncation) + 0.5;
  const double q = 1.0 / (1.0 + nu);
  const auto mapped = [&](double w) {
    w = std::max(w, 1e-12);
    const double x = a * std::pow(w, -q);
    return weight(x) * q * a * std::pow(w, -q - 1.0);
  };
  const double integral = numerics::adaptive_simpson(mapped, 0.0, 1.0, 1e-13, 60);
  const double slope = numerics::central_difference(weight, a, 1e-3 * a);
  mix.tail_weight = integral + slope / 24.0;
  const double p = nu + 2.0;
  const double third = weight(a) * p * (p + 1.0) * (p + 2.0) / (a * a * a);
  mix.tail_error = 7.0 * third / 5760.0 + 1e-12;
  return mix;
}

SpectralMixture to_unnormalized(const SpectralMixture& normalized, double total_mass) {
  SpectralMixture out;
  out.normalized = false;
  out.atoms.reserve(normalized.atoms.size());
  for (const auto& a : normalized.atoms) {
    out.atoms.push_back({a.rate, total_mass * a.rate * a.rate * a.weight});
  }
  return out;
}

RecurrenceResult recurrence_test(const SpectralMixture& delta) {
  if (delta.atoms.empty()) throw std::invalid_argument("recurrence_test: no atoms");
  const std::size_t n = delta.atoms.size();
  std::vector<double> terms(n);
  RecurrenceResult r;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& atom = delta.atoms[k];
    if (!(atom.rate > 0.0)) throw std::invalid_argument("recurrence_test: rates must be positive");
    if (k > 0 && !(atom.rate > delta.atoms[k - 1].rate))
      throw std::invalid_argument("recurrence_test: rates must be strictly increasing");
    terms[k] = atom.weight / (atom.rate * atom.rate);
    r.partial_sum += terms[k];
  }
  if (n < 4) {
    // Too few atoms to see a trend; a finite measure is trivially summable.
    r.positively_recurrent = true;
    return r;
  }
  // Least-squares slope of log term against log index over the upper half.
  const std::size_t lo = n / 2;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double m = 0.0;
  for (std::size_t k = lo; k < n; ++k) {
    const double x = std::log(static_cast<double>(k + 1));
    const double y = std::log(terms[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    m += 1.0;
  }
  r.decay_exponent = -(m * sxy - sx * sy) / (m * sxx - sx * sx);

  double first_quarter = 0.0, second_quarter = 0.0;
  for (std::size_t k = n / 4; k < n / 2; ++k) first_quarter += terms[k];
  for (std::size_t k = n / 2; k < n; ++k) second_quarter += terms[k];
  // Halves of a log-spaced partition; a divergent power law keeps adding
  // comparable mass on every doubling.
  r.partial_sums_growing = second_quarter > 0.9 * first_quarter;

  constexpr double kMargin = 0.05;
  r.positively_recurrent = r.decay_exponent > 1.0 + kMargin;
  r.tail_bound = r.positively_recurrent
                     ? terms[n - 1] * static_cast<double>(n) / (r.decay_exponent - 1.0)
                     : std::numeric_limits<double>::infinity();
  return r;
}

double lt_null_reflbm(double alpha, double beta) {
  if (alpha < 0.0 || beta < 0.0) throw std::invalid_argument("lt_null_reflbm: alpha, beta must be >= 0");
  if (alpha == 0.0 && beta == 0.0)
    throw std::invalid_argument("lt_null_reflbm: alpha = beta = 0 is not allowed");
  return std::sqrt(2.0) / (std::sqrt(alpha) + std::sqrt(beta));
}

} // namespace exlab::analytics

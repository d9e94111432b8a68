#include "exlab/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "exlab/numerics.hpp"

namespace exlab {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

} // namespace

ModelKind parse_model_kind(std::string_view name) {
  if (name == "rbm") return ModelKind::Rbm;
  if (name == "reflbm01") return ModelKind::ReflBm01;
  if (name == "sqou") return ModelKind::SqOu;
  throw std::invalid_argument("unknown model '" + std::string(name) +
                              "' (expected rbm, reflbm01 or sqou)");
}

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
  case ModelKind::Rbm: return "rbm";
  case ModelKind::ReflBm01: return "reflbm01";
  case ModelKind::SqOu: return "sqou";
  }
  return "?";
}

DiffusionModel DiffusionModel::rbm(double mu) {
  require(mu > 0.0 && std::isfinite(mu), "rbm: drift parameter mu must satisfy mu > 0");
  return {ModelKind::Rbm, mu, 0.0};
}

DiffusionModel DiffusionModel::refl_bm01() { return {ModelKind::ReflBm01, 0.0, 0.0}; }

DiffusionModel DiffusionModel::sq_ou(double gamma, double nu) {
  require(gamma > 0.0 && std::isfinite(gamma), "sqou: gamma must satisfy gamma > 0");
  require(nu > -1.0 && nu < 0.0, "sqou: nu must satisfy -1 < nu < 0");
  return {ModelKind::SqOu, gamma, nu};
}

DiffusionModel make_model(ModelKind kind, std::span<const double> params) {
  switch (kind) {
  case ModelKind::Rbm:
    require(params.size() == 1, "rbm: expects exactly one parameter (mu)");
    return DiffusionModel::rbm(params[0]);
  case ModelKind::ReflBm01:
    require(params.empty(), "reflbm01: takes no parameters");
    return DiffusionModel::refl_bm01();
  case ModelKind::SqOu:
    require(params.size() == 2, "sqou: expects two parameters (gamma, nu)");
    return DiffusionModel::sq_ou(params[0], params[1]);
  }
  throw std::invalid_argument("unknown model kind");
}

double DiffusionModel::drift(double x) const {
  switch (kind_) {
  case ModelKind::Rbm: return -p0_;
  case ModelKind::ReflBm01: return 0.0;
  case ModelKind::SqOu: return (2.0 * p1_ + 2.0) - 2.0 * p0_ * x;
  }
  return 0.0;
}

double DiffusionModel::diffusion_coeff(double x) const {
  if (kind_ == ModelKind::SqOu) return 2.0 * std::sqrt(std::max(x, 0.0));
  return 1.0;
}

double DiffusionModel::scale_deriv(double x) const {
  switch (kind_) {
  case ModelKind::Rbm: return std::exp(2.0 * p0_ * x);
  case ModelKind::ReflBm01: return 1.0;
  case ModelKind::SqOu: return std::pow(x, -p1_ - 1.0) * std::exp(p0_ * x);
  }
  return 1.0;
}

double DiffusionModel::speed_density(double x) const {
  switch (kind_) {
  case ModelKind::Rbm: return 2.0 * std::exp(-2.0 * p0_ * x);
  case ModelKind::ReflBm01: return 2.0;
  case ModelKind::SqOu: return 0.5 * std::pow(x, p1_) * std::exp(-p0_ * x);
  }
  return 0.0;
}

double DiffusionModel::total_mass() const {
  switch (kind_) {
  case ModelKind::Rbm: return 1.0 / p0_;
  case ModelKind::ReflBm01: return 2.0;
  case ModelKind::SqOu: return std::tgamma(p1_ + 1.0) / (2.0 * std::pow(p0_, p1_ + 1.0));
  }
  return 0.0;
}

double DiffusionModel::stationary_quantile(double u) const {
  require(u > 0.0 && u < 1.0, "stationary_quantile: u must lie in (0, 1)");
  switch (kind_) {
  case ModelKind::Rbm: return -std::log1p(-u) / (2.0 * p0_);
  case ModelKind::ReflBm01: return u;
  case ModelKind::SqOu: return boost::math::gamma_p_inv(p1_ + 1.0, u) / p0_;
  }
  return 0.0;
}

double DiffusionModel::green00(double alpha) const {
  require(alpha > 0.0, "green00: alpha must be positive");
  switch (kind_) {
  case ModelKind::Rbm: {
    const double mu = p0_;
    // 1 / (sqrt(2a + mu^2) - mu) without cancellation for small alpha.
    return (std::sqrt(2.0 * alpha + mu * mu) + mu) / (2.0 * alpha);
  }
  case ModelKind::ReflBm01: return numerics::coth_over_x(std::sqrt(2.0 * alpha));
  case ModelKind::SqOu: {
    const double gamma = p0_;
    const double nu = p1_;
    return std::exp(nu * std::log(gamma) + numerics::log_beta(alpha / (2.0 * gamma), -nu) -
                    std::lgamma(1.0 + nu));
  }
  }
  return 0.0;
}

double DiffusionModel::inverse_green00(double alpha) const {
  require(alpha >= 0.0, "inverse_green00: alpha must be nonnegative");
  if (alpha == 0.0) return 0.0;
  return 1.0 / green00(alpha);
}

double DiffusionModel::d0_density(double t) const {
  require(t > 0.0, "d0_density: t must be positive");
  switch (kind_) {
  case ModelKind::Rbm: {
    // Marginal of mu (2 pi v^3)^{-1/2} exp(-mu^2 v / 2) over v = t + s, s > 0.
    const double mu = p0_;
    return mu * (2.0 * std::exp(-0.5 * mu * mu * t) / std::sqrt(2.0 * std::numbers::pi * t) -
                 mu * std::erfc(mu * std::sqrt(0.5 * t)));
  }
  case ModelKind::SqOu: {
    const double gamma = p0_;
    const double nu = p1_;
    const double norm = 2.0 * gamma / (std::tgamma(-nu) * std::tgamma(1.0 + nu));
    return norm * std::exp(2.0 * gamma * nu * t) * std::pow(-std::expm1(-2.0 * gamma * t), nu);
  }
  case ModelKind::ReflBm01: break;
  }
  throw std::invalid_argument("d0_density: no closed form for model " + std::string(name()));
}

double DiffusionModel::d0_survival(double t) const {
  require(t >= 0.0, "d0_survival: t must be nonnegative");
  if (t == 0.0) return 1.0;
  switch (kind_) {
  case ModelKind::Rbm: {
    // Integral of the density above: closed form in erfc.
    const double mu = p0_;
    const double a = mu * std::sqrt(0.5 * t);
    return (1.0 + mu * mu * t) * std::erfc(a) -
           2.0 * mu * std::sqrt(t / (2.0 * std::numbers::pi)) * std::exp(-a * a);
  }
  case ModelKind::SqOu: {
    // Substituting u = exp(-2 gamma t) turns the tail into an incomplete beta.
    return boost::math::ibeta(-p1_, 1.0 + p1_, std::exp(-2.0 * p0_ * t));
  }
  case ModelKind::ReflBm01: break;
  }
  throw std::invalid_argument("d0_survival: no closed form for model " + std::string(name()));
}

double DiffusionModel::d0_mean() const {
  switch (kind_) {
  case ModelKind::Rbm: return 1.0 / (2.0 * p0_ * p0_);
  case ModelKind::ReflBm01: return 2.0 / 3.0;
  case ModelKind::SqOu: return (boost::math::digamma(1.0) - boost::math::digamma(-p1_)) / (2.0 * p0_);
  }
  return 0.0;
}

double DiffusionModel::default_t_max() const {
  switch (kind_) {
  case ModelKind::Rbm: return 50.0 / (p0_ * p0_);
  case ModelKind::ReflBm01: return 50.0;
  case ModelKind::SqOu: return 50.0 / p0_;
  }
  return 50.0;
}

double lt_diagonal_from_green(const DiffusionModel& model, double gamma) {
  require(gamma >= 0.0, "lt_diagonal_from_green: gamma must be nonnegative");
  const double mass = model.total_mass();
  const double h = 1e-5 * std::max(1.0, gamma);
  const auto psi = [&](double a) { return model.inverse_green00(a); };
  double slope = 0.0;
  if (gamma >= h) {
    slope = numerics::central_difference(psi, gamma, h);
  } else if (gamma == 0.0) {
    // d/da (1 / G_a) at 0 equals M by positive recurrence.
    return 1.0;
  } else {
    // Second-order one-sided difference; 1 / G is not defined below 0.
    slope = (-3.0 * psi(gamma) + 4.0 * psi(gamma + h) - psi(gamma + 2.0 * h)) / (2.0 * h);
  }
  return slope / mass;
}

double lt_joint_from_green(const DiffusionModel& model, double alpha, double beta) {
  require(alpha >= 0.0 && beta >= 0.0, "lt_joint_from_green: alpha and beta must be nonnegative");
  if (std::abs(alpha - beta) < 1e-8) return lt_diagonal_from_green(model, 0.5 * (alpha + beta));
  const double diff = model.inverse_green00(alpha) - model.inverse_green00(beta);
  return diff / (model.total_mass() * (alpha - beta));
}

} // namespace exlab

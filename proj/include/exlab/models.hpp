#pragma once

#include <limits>
#include <span>
#include <string>
#include <string_view>

#include "exlab/rng.hpp"

namespace exlab {

enum class ModelKind {
  Rbm,      ///< reflecting Brownian motion with drift -mu on [0, inf)
  ReflBm01, ///< Brownian motion reflected at 0 and 1
  SqOu,     ///< squared radial Ornstein-Uhlenbeck, 0 reflecting, -1 < nu < 0
};

ModelKind parse_model_kind(std::string_view name);
std::string_view model_kind_name(ModelKind kind);

/// One positively recurrent diffusion on I = [0, b] together with its
/// analytic ingredients. Immutable once constructed.
class DiffusionModel {
public:
  static DiffusionModel rbm(double mu);
  static DiffusionModel refl_bm01();
  static DiffusionModel sq_ou(double gamma, double nu);

  ModelKind kind() const { return kind_; }
  std::string_view name() const { return model_kind_name(kind_); }

  /// RBM: {mu}. ReflBM01: {}. SqOU: {gamma, nu}.
  double mu() const { return p0_; }
  double gamma() const { return p0_; }
  double nu() const { return p1_; }

  double upper_bound() const {
    return kind_ == ModelKind::ReflBm01 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  bool contains(double x) const { return x >= 0.0 && x <= upper_bound(); }

  /// True when the diffusion coefficient is identically 1 (RBM, ReflBM01).
  bool unit_diffusion() const { return kind_ != ModelKind::SqOu; }

  double drift(double x) const;
  double diffusion_coeff(double x) const;
  double scale_deriv(double x) const;
  double speed_density(double x) const;
  double total_mass() const;

  /// Quantile of the normalized speed measure m(dx) / M.
  double stationary_quantile(double u) const;
  double stationary_sample(Philox4x32& rng) const { return stationary_quantile(rng.uniform()); }

  /// G_alpha(0, 0) for alpha > 0.
  double green00(double alpha) const;
  /// 1 / G_alpha(0, 0), with the value 0 at alpha = 0.
  double inverse_green00(double alpha) const;

  /// Density of d_0 where a closed form is known (RBM, SqOU).
  bool has_d0_density() const { return kind_ != ModelKind::ReflBm01; }
  double d0_density(double t) const;
  /// P(d_0 > t); closed form for RBM and SqOU.
  double d0_survival(double t) const;

  /// E d_0, from the slope at 0 of the marginal transform 1 / (M alpha G_alpha).
  double d0_mean() const;

  /// Censoring horizon used when none is configured.
  double default_t_max() const;

private:
  DiffusionModel(ModelKind kind, double p0, double p1) : kind_(kind), p0_(p0), p1_(p1) {}

  ModelKind kind_;
  double p0_ = 0.0;
  double p1_ = 0.0;
};

DiffusionModel make_model(ModelKind kind, std::span<const double> params);

/// Joint Laplace transform E exp(-alpha I+ - beta I-) built from G_alpha(0,0):
/// (1 / (M (alpha - beta))) (1 / G_alpha - 1 / G_beta). Within 1e-8 of the
/// diagonal the derivative of 1 / G is taken by central difference.
double lt_joint_from_green(const DiffusionModel& model, double alpha, double beta);

/// The diagonal gamma -> lt_joint_from_green(gamma, gamma).
double lt_diagonal_from_green(const DiffusionModel& model, double gamma);

} // namespace exlab

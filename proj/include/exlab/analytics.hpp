#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "exlab/models.hpp"

namespace exlab::analytics {

/// A joint Laplace transform E exp(-alpha xi1 - beta xi2) with its diagonal.
struct JointLT {
  std::function<double(double, double)> eval;
  std::function<double(double)> diag;
};

/// 2 mu / (sqrt(2 alpha + mu^2) + sqrt(2 beta + mu^2)).
double lt_rbm(double mu, double alpha, double beta);
JointLT joint_lt_rbm(double mu);
JointLT joint_lt_from_green(const DiffusionModel& model);

/// Joint density of (-g0, d0), equivalently of (I+, I-), for RBM.
double joint_density_rbm(double mu, double t, double s);

/// E exp(-alpha d0) for Brownian motion reflected at 0 and 1.
double lt_reflbm01_d0(double alpha);

/// Density of d0 for the squared radial OU process.
double density_d0_sqou(double gamma, double nu, double t);

/// |lt(alpha, beta) - (alpha - beta)^{-1} int_beta^alpha diag|, which is 0
/// exactly for class-K laws.
double class_k_residual(const JointLT& lt, double alpha, double beta);

/// Joint density p(x + y) / (x + y) of a class-K pair whose sum has density p.
double density_from_sum(const std::function<double(double)>& p, double x, double y);

/// Levy tail n+(t, inf) = M * density of d0.
double levy_tail(const DiffusionModel& model, double t);
/// Density of V = d0 - g0: v * n+(dv) / M.
double v_density(const DiffusionModel& model, double v);

struct SpectralAtom {
  double rate;
  double weight;
};

/// Discrete mixing measure over exponential rates. For a normalized mixture
/// the d0 density is sum w z e^{-zt} and the V density sum w z^2 v e^{-zv}.
struct SpectralMixture {
  std::vector<SpectralAtom> atoms;
  bool normalized = true;
  /// Weight of the atoms beyond the truncation, estimated by Euler-Maclaurin.
  double tail_weight = 0.0;
  /// Error bound on tail_weight.
  double tail_error = 0.0;

  double explicit_weight() const;
  double total_weight() const { return explicit_weight() + tail_weight; }
  bool tail_resolved() const { return tail_error < 1e-8; }
  double d0_density(double t) const;
  double v_density(double v) const;
};

/// Mixture obtained from the binomial expansion of the SqOU d0 density:
/// rates 2 gamma (k - nu), k = 0..K.
SpectralMixture sqou_spectral(double gamma, double nu, std::size_t truncation = 200);

/// Unnormalized measure Delta(dz) = M z^2 Delta~(dz).
SpectralMixture to_unnormalized(const SpectralMixture& normalized, double total_mass);

struct RecurrenceResult {
  bool positively_recurrent = false;
  double partial_sum = 0.0;    ///< sum of Delta_k / z_k^2 over the atoms
  double decay_exponent = 0.0; ///< fitted p in Delta_k / z_k^2 ~ k^{-p}
  double tail_bound = 0.0;     ///< power-law estimate of the omitted tail
  bool partial_sums_growing = false;
};

/// Decides convergence of int Delta(dz) / z^2 from the atoms of Delta.
RecurrenceResult recurrence_test(const SpectralMixture& delta);

/// sqrt(2) / (sqrt(alpha) + sqrt(beta)) for reflecting BM on [0, inf).
double lt_null_reflbm(double alpha, double beta);

} // namespace exlab::analytics

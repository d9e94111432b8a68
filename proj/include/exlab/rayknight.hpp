#pragma once

#include <cstddef>
#include <vector>

#include "exlab/rng.hpp"

namespace exlab {

/// Squared radial Ornstein-Uhlenbeck process Z^(n, 2 mu) with generator
/// 2z d^2/dz^2 + (n - 2 mu z) d/dz, run in the space variable y.
struct CirRun {
  double n = 0.0;
  double mu = 1.0;
  double z0 = 0.0;
  double dy = 1e-4;
  double zeta = 0.0;      ///< absorption level for until-absorbed runs
  double area = 0.0;      ///< left-endpoint integral of Z over the run
  double end_value = 0.0; ///< positive part of the final iterate
  bool absorbed = false;
};

enum class CirMode { UntilAbsorbed, FixedLength };

/// Full-truncation Euler run of Z^(n, 2 mu) from z0. UntilAbsorbed stops at
/// the first iterate <= 0 (n = 0 makes 0 absorbing); FixedLength runs over
/// [0, length].
CirRun simulate_cir(double n, double mu, double z0, CirMode mode, double length, double dy,
                    Philox4x32& rng);

/// Total local time profile of the straddling RBM excursion at the observed
/// level: X_0 ~ Exp(2 mu), Z^(4, 2 mu) from 0 over [0, X_0], then Z^(0, 2 mu)
/// until absorption.
struct LocalTimeProfile {
  double x0 = 0.0;
  double l_e_at_x0 = 0.0;
  double h0_l = 0.0;
};

LocalTimeProfile total_local_time_profile(double mu, double dy, Philox4x32& rng);

/// Inverse-Gaussian IG(mean, shape) by the Michael-Schucany-Haas
/// transformation.
double sample_inverse_gaussian(double mean, double shape, Philox4x32& rng);

/// First passage of Brownian motion with drift mu to an independent level
/// c ~ Exp(2 mu).
double sample_hit_exp_level(double mu, Philox4x32& rng);

/// First passage of Brownian motion with drift mu to the fixed level c.
double sample_hit_level(double mu, double level, Philox4x32& rng);

/// CIR areas of Z^(0, 2 mu) started from Exp(mu); run k uses substream k.
std::vector<CirRun> cir_area_samples(double mu, double dy, std::size_t n,
                                     const StreamFactory& streams, unsigned workers);

std::vector<LocalTimeProfile> local_time_profiles(double mu, double dy, std::size_t n,
                                                  const StreamFactory& streams, unsigned workers);

std::vector<double> hit_exp_level_samples(double mu, std::size_t n, const StreamFactory& streams,
                                          unsigned workers);

} // namespace exlab

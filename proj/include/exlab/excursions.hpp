#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "exlab/models.hpp"
#include "exlab/pathsim.hpp"
#include "exlab/rng.hpp"
#include "exlab/stats.hpp"

namespace exlab {

/// The excursion of a stationary diffusion straddling time 0.
struct StraddlingExcursion {
  double x0 = 0.0;
  double g0 = 0.0; ///< last zero before 0 (negative)
  double d0 = 0.0; ///< first zero after 0
  double v = 0.0;  ///< d0 - g0
  double i_plus = 0.0;
  double i_minus = 0.0;
  std::int64_t ticks_plus = 0;
  std::int64_t ticks_minus = 0;
  std::int64_t ticks_v = 0;
  bool censored = false;
};

/// Draws X_0 from the stationary law with `forward`, then runs two
/// independent legs from X_0: `forward` gives d_0, `backward` gives -g_0.
StraddlingExcursion sample_straddling(const DiffusionModel& model, const PathConfig& cfg,
                                      Philox4x32& forward, Philox4x32& backward);

/// Aligned columns of uncensored straddling excursions.
struct IdentitySamples {
  std::vector<double> minus_g0;
  std::vector<double> d0;
  std::vector<double> i_plus;
  std::vector<double> i_minus;
  std::vector<double> v;
  std::size_t requested = 0;
  std::size_t censored = 0;

  std::size_t size() const { return d0.size(); }
  double censored_fraction() const {
    return requested == 0 ? 0.0 : static_cast<double>(censored) / static_cast<double>(requested);
  }
};

/// N excursions; excursion k uses substreams 2k and 2k + 1 of `streams`.
IdentitySamples identity_samples(const DiffusionModel& model, const PathConfig& cfg, std::size_t n,
                                 const StreamFactory& streams, unsigned workers);

/// d_0 alone: excursion k's forward leg on substream 2k, so the values equal
/// the d0 column of identity_samples with the same streams.
std::vector<double> d0_samples(const DiffusionModel& model, const PathConfig& cfg, std::size_t n,
                               const StreamFactory& streams, unsigned workers,
                               std::size_t* censored = nullptr);

struct UniformityBin {
  std::size_t bin = 0;
  double v_low = 0.0;
  double v_high = 0.0;
  std::size_t count = 0;
  double ks = 0.0;
  bool excluded = false; ///< fewer than min_count pairs
};

/// Bins pairs by empirical quantiles of V and computes the KS distance of
/// i_plus / V against uniform(0, 1) in each bin.
std::vector<UniformityBin> conditional_uniformity(std::span<const double> i_plus,
                                                  std::span<const double> v, std::size_t bins,
                                                  std::size_t min_count = 100);

struct IndependenceResult {
  stats::Estimate joint;     ///< P(X_s > X_0, d_0 > s)
  stats::Estimate above;     ///< P(X_s > X_0)
  stats::Estimate survive;   ///< P(d_0 > s)
  stats::Estimate product;   ///< above * survive, delta-method error
};

/// Empirical check that {X_s > X_0} and {d_0 > s} are independent.
IndependenceResult independence_check(const DiffusionModel& model, const PathConfig& cfg, double s,
                                      std::size_t n, const StreamFactory& streams,
                                      unsigned workers);

} // namespace exlab

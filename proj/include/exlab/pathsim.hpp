#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "exlab/models.hpp"
#include "exlab/rng.hpp"

namespace exlab {

struct PathConfig {
  double dt = 1e-3;
  /// Censoring horizon; <= 0 selects model.default_t_max().
  double t_max = 0.0;
  /// Per-step Brownian-bridge crossing probability exp(-2xy/h) for
  /// unit-diffusion models.
  bool bridge_correction = true;
  bool record_path = false;
  /// Unit-diffusion models only: a step whose Brownian-bridge probability of
  /// touching 0 or the start level exceeds `refine_threshold` is bisected
  /// with an exact bridge midpoint, at most `refine_depth` times. 0 disables
  /// refinement.
  int refine_depth = 10;
  double refine_threshold = 1e-3;
  /// Levels at which occupation of (level - eps, level + eps) is streamed.
  std::vector<double> band_levels;
  /// Adds the starting point x0 as a band level.
  bool band_at_start = false;
  double band_eps = 0.02;

  void validate() const;
};

struct PathPoint {
  double t;
  double x;
};

/// One leg of the diffusion from x0 run until it first hits 0.
///
/// Time is accumulated in integer ticks of dt / 2^refine_depth; every
/// (sub)step is classified exactly once by its left endpoint, so
/// ticks_above + ticks_below == hit ticks.
struct LegResult {
  double x0 = 0.0;
  double hit_time = 0.0;
  double time_above = 0.0; ///< time with X > x0
  double time_below = 0.0; ///< time with 0 < X <= x0
  std::int64_t ticks_above = 0;
  std::int64_t ticks_below = 0;
  double tick = 0.0;
  std::vector<std::pair<double, double>> band_occupations;
  bool censored = false;
  std::optional<std::vector<PathPoint>> path;
};

/// Unit of accumulated time for a configuration.
double tick_length(const DiffusionModel& model, const PathConfig& cfg);

LegResult run_leg(const DiffusionModel& model, double x0, const PathConfig& cfg, Philox4x32& rng);

/// Value of the reflected diffusion after `horizon` started at x0, and
/// whether 0 was reached on the way (crossing or bridge-crossing draw).
struct HorizonResult {
  double value = 0.0;
  bool hit = false;
};

HorizonResult run_horizon(const DiffusionModel& model, double x0, double horizon,
                          const PathConfig& cfg, Philox4x32& rng);

/// Occupation of (level - eps, level + eps) along a recorded leg divided by
/// 2 eps. Each point holds its left-endpoint value until the next point; the
/// last point holds until `end_time`.
double local_time_band_estimate(const std::vector<PathPoint>& path, double end_time, double level,
                                double eps);

} // namespace exlab

#include "exlab/pathsim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace exlab {

void PathConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("PathConfig: dt must be positive");
  if (t_max > 0.0 && t_max < dt) throw std::invalid_argument("PathConfig: t_max must be >= dt");
  if (refine_depth < 0 || refine_depth > 30)
    throw std::invalid_argument("PathConfig: refine_depth must lie in [0, 30]");
  if (!(band_eps > 0.0)) throw std::invalid_argument("PathConfig: band_eps must be positive");
}

namespace {

int effective_depth(const DiffusionModel& model, const PathConfig& cfg) {
  return (model.unit_diffusion() && cfg.bridge_correction) ? cfg.refine_depth : 0;
}

double fold_unit_interval(double y) { return y > 1.0 ? 2.0 - y : y; }

[[noreturn]] void non_finite(double t) {
  throw std::runtime_error("run_leg: non-finite iterate at t = " + std::to_string(t));
}

class LegRunner {
public:
  LegRunner(const DiffusionModel& model, double x0, const PathConfig& cfg, Philox4x32& rng)
      : model_(model), cfg_(cfg), rng_(rng), depth_(effective_depth(model, cfg)) {
    result_.x0 = x0;
    result_.tick = cfg.dt / static_cast<double>(std::int64_t{1} << depth_);
    levels_ = cfg.band_levels;
    if (cfg.band_at_start) levels_.push_back(x0);
    band_ticks_.assign(levels_.size(), 0);
    if (cfg.record_path) result_.path.emplace();
  }

  LegResult run() {
    const double x0 = result_.x0;
    if (x0 > 0.0) {
      const double t_max = cfg_.t_max > 0.0 ? cfg_.t_max : model_.default_t_max();
      const auto max_steps = static_cast<std::int64_t>(std::ceil(t_max / cfg_.dt - 1e-9));
      if (model_.unit_diffusion()) {
        walk_unit(x0, max_steps);
      } else {
        walk_general(x0, max_steps);
      }
    }
    finish();
    return std::move(result_);
  }

private:
  void occupy(double a, std::int64_t ticks) {
    if (result_.path) result_.path->push_back({elapsed() * result_.tick, a});
    if (a > result_.x0) {
      result_.ticks_above += ticks;
    } else {
      result_.ticks_below += ticks;
    }
    for (std::size_t j = 0; j < levels_.size(); ++j) {
      if (std::abs(a - levels_[j]) < cfg_.band_eps) band_ticks_[j] += ticks;
    }
  }

  std::int64_t elapsed() const { return result_.ticks_above + result_.ticks_below; }

  double fold(double y) const {
    return model_.kind() == ModelKind::ReflBm01 ? fold_unit_interval(y) : y;
  }

  // Handles the subinterval (a, b) spanning 2^level ticks; returns true on a hit.
  bool interval(double a, double b, int level) {
    const std::int64_t ticks = std::int64_t{1} << level;
    const double h = result_.tick * static_cast<double>(ticks);
    if (b <= 0.0) {
      if (level > 0) return bisect(a, b, level, h);
      occupy(a, ticks);
      return true;
    }
    double p = 0.0;
    if (cfg_.bridge_correction) {
      const double exponent = 2.0 * a * b / h;
      if (exponent < 40.0) p = std::exp(-exponent);
    }
    if (level > 0 && (p > cfg_.refine_threshold || level_crossing(a, b, h) > cfg_.refine_threshold)) {
      return bisect(a, b, level, h);
    }
    occupy(a, ticks);
    return p > 0.0 && rng_.uniform() < p;
  }

  // Bridge probability of touching the start level; steps near it are refined
  // so that the left-endpoint classification above / below is accurate.
  double level_crossing(double a, double b, double h) const {
    const double prod = (a - result_.x0) * (b - result_.x0);
    if (prod <= 0.0) return 1.0;
    const double exponent = 2.0 * prod / h;
    return exponent < 40.0 ? std::exp(-exponent) : 0.0;
  }

  bool bisect(double a, double b, int level, double h) {
    // Brownian-bridge midpoint; the bridge law does not depend on the drift.
    const double m = fold(0.5 * (a + b) + 0.5 * std::sqrt(h) * rng_.normal());
    if (interval(a, m, level - 1)) return true;
    return interval(m, b, level - 1);
  }

  void walk_unit(double x, std::int64_t max_steps) {
    const double drift_step = model_.drift(0.0) * cfg_.dt;
    const double sd = std::sqrt(cfg_.dt);
    for (std::int64_t step = 0;; ++step) {
      if (step >= max_steps) {
        result_.censored = true;
        return;
      }
      const double y = fold(x + drift_step + sd * rng_.normal());
      if (!std::isfinite(y)) non_finite(static_cast<double>(step) * cfg_.dt);
      if (interval(x, y, depth_)) return;
      x = y;
    }
  }

  void walk_general(double x, std::int64_t max_steps) {
    const double dt = cfg_.dt;
    const double sd = std::sqrt(dt);
    for (std::int64_t step = 0;; ++step) {
      if (step >= max_steps) {
        result_.censored = true;
        return;
      }
      // Full truncation: coefficients see the positive part of the iterate.
      const double xp = std::max(x, 0.0);
      const double y = x + model_.drift(xp) * dt + model_.diffusion_coeff(xp) * sd * rng_.normal();
      if (!std::isfinite(y)) non_finite(static_cast<double>(step) * dt);
      occupy(x, 1);
      if (y <= 0.0) return;
      x = y;
    }
  }

  void finish() {
    const double tick = result_.tick;
    result_.time_above = static_cast<double>(result_.ticks_above) * tick;
    result_.time_below = static_cast<double>(result_.ticks_below) * tick;
    result_.hit_time = static_cast<double>(elapsed()) * tick;
    result_.band_occupations.reserve(levels_.size());
    for (std::size_t j = 0; j < levels_.size(); ++j) {
      result_.band_occupations.emplace_back(levels_[j], static_cast<double>(band_ticks_[j]) * tick);
    }
  }

  const DiffusionModel& model_;
  const PathConfig& cfg_;
  Philox4x32& rng_;
  int depth_;
  LegResult result_;
  std::vector<double> levels_;
  std::vector<std::int64_t> band_ticks_;
};

} // namespace

double tick_length(const DiffusionModel& model, const PathConfig& cfg) {
  return cfg.dt / static_cast<double>(std::int64_t{1} << effective_depth(model, cfg));
}

LegResult run_leg(const DiffusionModel& model, double x0, const PathConfig& cfg, Philox4x32& rng) {
  cfg.validate();
  if (!model.contains(x0)) {
    throw std::invalid_argument("run_leg: start point " + std::to_string(x0) +
                                " outside the state interval of " + std::string(model.name()));
  }
  return LegRunner(model, x0, cfg, rng).run();
}

HorizonResult run_horizon(const DiffusionModel& model, double x0, double horizon,
                          const PathConfig& cfg, Philox4x32& rng) {
  cfg.validate();
  if (!model.contains(x0)) throw std::invalid_argument("run_horizon: start point outside interval");
  if (!(horizon >= 0.0)) throw std::invalid_argument("run_horizon: horizon must be nonnegative");
  const double dt = cfg.dt;
  const double sd = std::sqrt(dt);
  const auto steps = static_cast<std::int64_t>(std::llround(horizon / dt));
  HorizonResult out{x0, x0 == 0.0};
  double x = x0;
  for (std::int64_t i = 0; i < steps; ++i) {
    const double xp = std::max(x, 0.0);
    double y = x + model.drift(xp) * dt + model.diffusion_coeff(xp) * sd * rng.normal();
    if (!std::isfinite(y)) throw std::runtime_error("run_horizon: non-finite iterate");
    if (!out.hit) {
      if (y <= 0.0) {
        out.hit = true;
      } else if (cfg.bridge_correction && model.unit_diffusion()) {
        const double exponent = 2.0 * x * y / dt;
        if (exponent < 40.0 && rng.uniform() < std::exp(-exponent)) out.hit = true;
      }
    }
    y = std::abs(y);
    if (model.kind() == ModelKind::ReflBm01) y = fold_unit_interval(y);
    x = y;
  }
  out.value = x;
  return out;
}

double local_time_band_estimate(const std::vector<PathPoint>& path, double end_time, double level,
                                double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("local_time_band_estimate: eps must be positive");
  double occupation = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double t_next = (i + 1 < path.size()) ? path[i + 1].t : end_time;
    if (std::abs(path[i].x - level) < eps) occupation += t_next - path[i].t;
  }
  return occupation / (2.0 * eps);
}

} // namespace exlab

#include "exlab/excursions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "exlab/parallel.hpp"

namespace exlab {

StraddlingExcursion sample_straddling(const DiffusionModel& model, const PathConfig& cfg,
                                      Philox4x32& forward, Philox4x32& backward) {
  const double x0 = model.stationary_sample(forward);
  const LegResult ahead = run_leg(model, x0, cfg, forward);
  const LegResult behind = run_leg(model, x0, cfg, backward);

  StraddlingExcursion e;
  e.x0 = x0;
  e.censored = ahead.censored || behind.censored;
  e.ticks_plus = ahead.ticks_above + behind.ticks_above;
  e.ticks_minus = ahead.ticks_below + behind.ticks_below;
  e.ticks_v = e.ticks_plus + e.ticks_minus;
  const double tick = ahead.tick;
  e.d0 = ahead.hit_time;
  e.g0 = -behind.hit_time;
  e.v = static_cast<double>(e.ticks_v) * tick;
  e.i_plus = static_cast<double>(e.ticks_plus) * tick;
  e.i_minus = static_cast<double>(e.ticks_minus) * tick;
  return e;
}

IdentitySamples identity_samples(const DiffusionModel& model, const PathConfig& cfg, std::size_t n,
                                 const StreamFactory& streams, unsigned workers) {
  if (n == 0) throw std::invalid_argument("identity_samples: N must be at least 1");
  const auto excursions = parallel_map(n, workers, [&](std::size_t k) {
    Philox4x32 forward = streams(2 * k);
    Philox4x32 backward = streams(2 * k + 1);
    return sample_straddling(model, cfg, forward, backward);
  });
  IdentitySamples out;
  out.requested = n;
  for (const auto& e : excursions) {
    if (e.censored) {
      ++out.censored;
      continue;
    }
    out.minus_g0.push_back(-e.g0);
    out.d0.push_back(e.d0);
    out.i_plus.push_back(e.i_plus);
    out.i_minus.push_back(e.i_minus);
    out.v.push_back(e.v);
  }
  return out;
}

std::vector<double> d0_samples(const DiffusionModel& model, const PathConfig& cfg, std::size_t n,
                               const StreamFactory& streams, unsigned workers,
                               std::size_t* censored) {
  const auto legs = parallel_map(n, workers, [&](std::size_t k) {
    Philox4x32 forward = streams(2 * k);
    const double x0 = model.stationary_sample(forward);
    const LegResult leg = run_leg(model, x0, cfg, forward);
    return std::pair<double, bool>{leg.hit_time, leg.censored};
  });
  std::vector<double> out;
  out.reserve(n);
  std::size_t dropped = 0;
  for (const auto& [t, cens] : legs) {
    if (cens) {
      ++dropped;
    } else {
      out.push_back(t);
    }
  }
  if (censored) *censored = dropped;
  return out;
}

std::vector<UniformityBin> conditional_uniformity(std::span<const double> i_plus,
                                                  std::span<const double> v, std::size_t bins,
                                                  std::size_t min_count) {
  if (i_plus.size() != v.size()) throw std::invalid_argument("conditional_uniformity: size mismatch");
  if (bins == 0) throw std::invalid_argument("conditional_uniformity: bins must be positive");
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

  const auto uniform_cdf = [](double u) { return std::clamp(u, 0.0, 1.0); };
  std::vector<UniformityBin> out;
  for (std::size_t b = 0; b < bins; ++b) {
    const std::size_t lo = b * n / bins;
    const std::size_t hi = (b + 1) * n / bins;
    UniformityBin bin;
    bin.bin = b;
    bin.count = hi - lo;
    if (bin.count > 0) {
      bin.v_low = v[order[lo]];
      bin.v_high = v[order[hi - 1]];
    }
    bin.excluded = bin.count < min_count || bin.count == 0;
    if (bin.count > 0) {
      std::vector<double> ratios;
      ratios.reserve(bin.count);
      for (std::size_t k = lo; k < hi; ++k) {
        const std::size_t idx = order[k];
        ratios.push_back(v[idx] > 0.0 ? i_plus[idx] / v[idx] : 0.0);
      }
      bin.ks = stats::ks_one_sample(ratios, uniform_cdf);
    }
    out.push_back(bin);
  }
  return out;
}

IndependenceResult independence_check(const DiffusionModel& model, const PathConfig& cfg, double s,
                                      std::size_t n, const StreamFactory& streams,
                                      unsigned workers) {
  if (!(s > 0.0)) throw std::invalid_argument("independence_check: s must be positive");
  if (n == 0) throw std::invalid_argument("independence_check: N must be at least 1");
  struct Outcome {
    char above = 0;
    char survive = 0;
  };
  const auto outcomes = parallel_map(n, workers, [&](std::size_t k) {
    Philox4x32 rng = streams(k);
    const double x0 = model.stationary_sample(rng);
    const HorizonResult h = run_horizon(model, x0, s, cfg, rng);
    return Outcome{static_cast<char>(h.value > x0), static_cast<char>(!h.hit)};
  });
  std::vector<char> above(n), survive(n), joint(n);
  for (std::size_t k = 0; k < n; ++k) {
    above[k] = outcomes[k].above;
    survive[k] = outcomes[k].survive;
    joint[k] = static_cast<char>(above[k] && survive[k]);
  }
  IndependenceResult r;
  r.joint = stats::proportion(joint);
  r.above = stats::proportion(above);
  r.survive = stats::proportion(survive);
  const double pa = r.above.value;
  const double ps = r.survive.value;
  r.product.value = pa * ps;
  r.product.std_error = std::hypot(ps * r.above.std_error, pa * r.survive.std_error);
  return r;
}

} // namespace exlab

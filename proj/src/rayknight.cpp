#include "exlab/rayknight.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "exlab/parallel.hpp"

namespace exlab {

CirRun simulate_cir(double n, double mu, double z0, CirMode mode, double length, double dy,
                    Philox4x32& rng) {
  if (!(n >= 0.0)) throw std::invalid_argument("simulate_cir: dimension n must be >= 0");
  if (!(mu > 0.0)) throw std::invalid_argument("simulate_cir: mu must be positive");
  if (!(z0 >= 0.0)) throw std::invalid_argument("simulate_cir: z0 must be >= 0");
  if (!(dy > 0.0)) throw std::invalid_argument("simulate_cir: dy must be positive");
  if (mode == CirMode::FixedLength && !(length >= 0.0))
    throw std::invalid_argument("simulate_cir: length must be >= 0");

  CirRun run{n, mu, z0, dy};
  const double sd = std::sqrt(dy);
  double z = z0;

  const auto step = [&](double h, double sdh) {
    const double zp = std::max(z, 0.0);
    const double next = z + (n - 2.0 * mu * zp) * h + 2.0 * std::sqrt(zp) * sdh * rng.normal();
    if (!std::isfinite(next)) {
      throw std::runtime_error("simulate_cir: non-finite iterate");
    }
    run.area += zp * h;
    z = next;
  };

  if (mode == CirMode::UntilAbsorbed) {
    if (n > 0.0) throw std::invalid_argument("simulate_cir: until-absorbed requires n = 0");
    std::int64_t steps = 0;
    while (z > 0.0) {
      step(dy, sd);
      ++steps;
    }
    run.zeta = static_cast<double>(steps) * dy;
    run.absorbed = true;
    run.end_value = 0.0;
    return run;
  }

  const auto full = static_cast<std::int64_t>(std::floor(length / dy + 1e-9));
  for (std::int64_t i = 0; i < full; ++i) {
    step(dy, sd);
    if (n == 0.0 && z <= 0.0) {
      run.absorbed = true;
      run.zeta = static_cast<double>(i + 1) * dy;
      z = 0.0;
      break;
    }
  }
  const double rest = length - static_cast<double>(full) * dy;
  if (!run.absorbed && rest > 1e-12 * dy) step(rest, std::sqrt(rest));
  run.end_value = std::max(z, 0.0);
  return run;
}

LocalTimeProfile total_local_time_profile(double mu, double dy, Philox4x32& rng) {
  if (!(mu > 0.0)) throw std::invalid_argument("total_local_time_profile: mu must be positive");
  LocalTimeProfile p;
  p.x0 = rng.exponential(2.0 * mu);
  const CirRun below = simulate_cir(4.0, mu, 0.0, CirMode::FixedLength, p.x0, dy, rng);
  p.l_e_at_x0 = below.end_value;
  const CirRun above = simulate_cir(0.0, mu, p.l_e_at_x0, CirMode::UntilAbsorbed, 0.0, dy, rng);
  p.h0_l = above.zeta;
  return p;
}

double sample_inverse_gaussian(double mean, double shape, Philox4x32& rng) {
  if (!(mean > 0.0) || !(shape > 0.0))
    throw std::invalid_argument("sample_inverse_gaussian: mean and shape must be positive");
  const double nu = rng.normal();
  const double y = nu * nu;
  const double my = mean * y;
  const double x = mean + mean * my / (2.0 * shape) -
                   mean / (2.0 * shape) * std::sqrt(4.0 * shape * my + my * my);
  if (rng.uniform() * (mean + x) <= mean) return x;
  return mean * mean / x;
}

double sample_hit_level(double mu, double level, Philox4x32& rng) {
  if (!(mu > 0.0)) throw std::invalid_argument("sample_hit_level: mu must be positive");
  if (!(level >= 0.0)) throw std::invalid_argument("sample_hit_level: level must be >= 0");
  if (level == 0.0) return 0.0;
  return sample_inverse_gaussian(level / mu, level * level, rng);
}

double sample_hit_exp_level(double mu, Philox4x32& rng) {
  if (!(mu > 0.0)) throw std::invalid_argument("sample_hit_exp_level: mu must be positive");
  const double level = rng.exponential(2.0 * mu);
  return sample_hit_level(mu, level, rng);
}

std::vector<CirRun> cir_area_samples(double mu, double dy, std::size_t n,
                                     const StreamFactory& streams, unsigned workers) {
  return parallel_map(n, workers, [&](std::size_t k) {
    Philox4x32 rng = streams(k);
    const double z0 = rng.exponential(mu);
    return simulate_cir(0.0, mu, z0, CirMode::UntilAbsorbed, 0.0, dy, rng);
  });
}

std::vector<LocalTimeProfile> local_time_profiles(double mu, double dy, std::size_t n,
                                                  const StreamFactory& streams, unsigned workers) {
  return parallel_map(n, workers, [&](std::size_t k) {
    Philox4x32 rng = streams(k);
    return total_local_time_profile(mu, dy, rng);
  });
}

std::vector<double> hit_exp_level_samples(double mu, std::size_t n, const StreamFactory& streams,
                                          unsigned workers) {
  return parallel_map(n, workers, [&](std::size_t k) {
    Philox4x32 rng = streams(k);
    return sample_hit_exp_level(mu, rng);
  });
}

} // namespace exlab

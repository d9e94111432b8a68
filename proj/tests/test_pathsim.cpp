#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "exlab/parallel.hpp"
#include "exlab/pathsim.hpp"
#include "exlab/stats.hpp"

using exlab::DiffusionModel;
using exlab::LegResult;
using exlab::PathConfig;
using exlab::Philox4x32;
using exlab::StreamFactory;

namespace {

std::vector<double> hit_times(const DiffusionModel& m, double x0, const PathConfig& cfg, std::size_t n,
                              std::uint64_t seed) {
  const StreamFactory f{seed, 0};
  return exlab::parallel_map(n, 1, [&](std::size_t k) {
    Philox4x32 rng = f(k);
    return exlab::run_leg(m, x0, cfg, rng).hit_time;
  });
}

} // namespace

TEST_CASE("a leg started at 0 is empty") {
  Philox4x32 rng(1, 0, 0);
  const auto r = exlab::run_leg(DiffusionModel::rbm(1.0), 0.0, PathConfig{}, rng);
  CHECK(r.hit_time == 0.0);
  CHECK(r.time_above == 0.0);
  CHECK(r.time_below == 0.0);
  CHECK_FALSE(r.censored);
}

TEST_CASE("forced censoring") {
  PathConfig cfg;
  cfg.t_max = cfg.dt;
  Philox4x32 rng(1, 0, 0);
  const auto r = exlab::run_leg(DiffusionModel::rbm(1.0), 50.0, cfg, rng);
  CHECK(r.censored);
  CHECK(r.hit_time <= cfg.t_max + 1e-15);
}

TEST_CASE("above plus below equals the hit time exactly") {
  for (const auto& m : {DiffusionModel::rbm(1.0), DiffusionModel::refl_bm01(), DiffusionModel::sq_ou(1.0, -0.5)}) {
    const StreamFactory f{3, 0};
    for (std::uint32_t k = 0; k < 200; ++k) {
      Philox4x32 rng = f(k);
      const double x0 = m.stationary_sample(rng);
      const LegResult r = exlab::run_leg(m, x0, PathConfig{}, rng);
      REQUIRE_FALSE(r.censored);
      CHECK(r.ticks_above + r.ticks_below == static_cast<std::int64_t>(std::llround(r.hit_time / r.tick)));
      CHECK(r.time_above + r.time_below == doctest::Approx(r.hit_time).epsilon(1e-12));
    }
  }
}

TEST_CASE("ReflBM01 stays in [0,1]") {
  PathConfig cfg;
  cfg.record_path = true;
  Philox4x32 rng(8, 0, 0);
  const auto r = exlab::run_leg(DiffusionModel::refl_bm01(), 0.9, cfg, rng);
  REQUIRE(r.path);
  for (const auto& p : *r.path) {
    CHECK(p.x >= 0.0);
    CHECK(p.x <= 1.0);
  }
}

TEST_CASE("mean first passage of drifted Brownian motion") {
  PathConfig cfg;
  cfg.dt = 1e-4;
  const auto h = hit_times(DiffusionModel::rbm(1.0), 1.0, cfg, 20000, 5);
  const auto e = exlab::stats::mean_estimate(h);
  CHECK(std::abs(e.value - 1.0) < 0.02);
  CHECK(std::abs(e.value - 1.0) < 3.0 * e.std_error + 2e-3);
}

TEST_CASE("bridge correction reduces the step-size dependence of the hit time") {
  const auto m = DiffusionModel::rbm(1.0);
  const auto mean_at = [&](double dt, bool corrected) {
    PathConfig cfg;
    cfg.dt = dt;
    cfg.bridge_correction = corrected;
    return exlab::stats::mean_estimate(hit_times(m, 1.0, cfg, 100000, 17)).value;
  };
  const double on = std::abs(mean_at(1e-2, true) - mean_at(5e-3, true));
  const double off = std::abs(mean_at(1e-2, false) - mean_at(5e-3, false));
  CHECK(on < off);
}

TEST_CASE("legs are reproducible from their stream") {
  const auto m = DiffusionModel::sq_ou(1.0, -0.5);
  Philox4x32 a(4, 2, 9);
  Philox4x32 b(4, 2, 9);
  const auto ra = exlab::run_leg(m, 0.4, PathConfig{}, a);
  const auto rb = exlab::run_leg(m, 0.4, PathConfig{}, b);
  CHECK(ra.ticks_above == rb.ticks_above);
  CHECK(ra.ticks_below == rb.ticks_below);
  CHECK(ra.hit_time == rb.hit_time);
}

TEST_CASE("configuration and start point validation") {
  Philox4x32 rng(1, 0, 0);
  PathConfig bad;
  bad.dt = 0.0;
  CHECK_THROWS_AS(exlab::run_leg(DiffusionModel::rbm(1.0), 1.0, bad, rng), std::invalid_argument);
  PathConfig short_horizon;
  short_horizon.t_max = 1e-4;
  CHECK_THROWS_AS(exlab::run_leg(DiffusionModel::rbm(1.0), 1.0, short_horizon, rng), std::invalid_argument);
  CHECK_THROWS_AS(exlab::run_leg(DiffusionModel::rbm(1.0), -0.1, PathConfig{}, rng), std::invalid_argument);
  CHECK_THROWS_AS(exlab::run_leg(DiffusionModel::refl_bm01(), 1.5, PathConfig{}, rng), std::invalid_argument);
}

TEST_CASE("band estimate of local time") {
  const std::vector<exlab::PathPoint> away{{0.0, 2.0}, {0.5, 3.0}};
  CHECK(exlab::local_time_band_estimate(away, 1.0, 0.5, 0.02) == 0.0);

  // Expected local time at the start level x of a leg from x: (1 - e^{-2 mu x}) / mu.
  const auto m = DiffusionModel::rbm(1.0);
  PathConfig cfg;
  cfg.dt = 1e-4;
  cfg.band_levels = {1.0};
  cfg.band_eps = 0.02;
  PathConfig half = cfg;
  half.band_eps = 0.01;
  const StreamFactory f{12, 0};
  const std::size_t n = 4000;
  const auto rows = exlab::parallel_map(n, 1, [&](std::size_t k) {
    Philox4x32 rng = f(k);
    PathConfig rec = cfg;
    rec.band_levels = {1.0, 1.0};
    rec.record_path = true;
    const auto r = exlab::run_leg(m, 1.0, rec, rng);
    const double wide = r.band_occupations[0].second / (2.0 * cfg.band_eps);
    const double narrow = exlab::local_time_band_estimate(*r.path, r.hit_time, 1.0, half.band_eps);
    return std::pair<double, double>{wide, narrow};
  });
  std::vector<double> wide(n), narrow(n);
  for (std::size_t k = 0; k < n; ++k) {
    wide[k] = rows[k].first;
    narrow[k] = rows[k].second;
  }
  const double exact = 1.0 - std::exp(-2.0);
  const double mean_wide = exlab::stats::mean_estimate(wide).value;
  const double mean_narrow = exlab::stats::mean_estimate(narrow).value;
  CHECK(std::abs(mean_wide - exact) / exact < 0.05);
  CHECK(std::abs(mean_wide - mean_narrow) / mean_wide < 0.05);
}

TEST_CASE("horizon run of the reflected diffusion") {
  Philox4x32 rng(1, 0, 0);
  const auto m = DiffusionModel::rbm(1.0);
  const auto zero = exlab::run_horizon(m, 0.7, 0.0, PathConfig{}, rng);
  CHECK(zero.value == 0.7);
  CHECK_FALSE(zero.hit);
  const auto r = exlab::run_horizon(m, 0.7, 5.0, PathConfig{}, rng);
  CHECK(r.value >= 0.0);
  CHECK_THROWS_AS(exlab::run_horizon(m, 0.7, -1.0, PathConfig{}, rng), std::invalid_argument);
}

#include "exlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "exlab/analytics.hpp"
#include "exlab/bridges.hpp"
#include "exlab/excursions.hpp"
#include "exlab/models.hpp"
#include "exlab/numerics.hpp"
#include "exlab/parallel.hpp"
#include "exlab/pathsim.hpp"
#include "exlab/rayknight.hpp"
#include "exlab/stats.hpp"

namespace exlab {

namespace {

// Substream domains; each sampling task of an experiment owns one.
constexpr std::uint32_t kDomainExcursions = 1;
constexpr std::uint32_t kDomainExcursionsIndependent = 2;
constexpr std::uint32_t kDomainIndependence = 3;
constexpr std::uint32_t kDomainBessel = 11;
constexpr std::uint32_t kDomainBrownianBridge = 12;
constexpr std::uint32_t kDomainProfiles = 21;
constexpr std::uint32_t kDomainCirArea = 22;
constexpr std::uint32_t kDomainHitLevel = 23;
constexpr std::uint32_t kDomainBand = 24;

const std::vector<double> kClassKGrid{0.25, 0.5, 1.0, 2.0, 4.0};

std::string key(const std::string& base, double a) {
  return base + "[" + format_double(a) + "]";
}

std::string key(const std::string& base, double a, double b) {
  return base + "[" + format_double(a) + "," + format_double(b) + "]";
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + format_double(xs[i]);
  return s;
}

DiffusionModel build_model(const RunConfig& cfg) {
  switch (parse_model_kind(cfg.model)) {
  case ModelKind::Rbm: return DiffusionModel::rbm(cfg.mu);
  case ModelKind::ReflBm01: return DiffusionModel::refl_bm01();
  case ModelKind::SqOu: return DiffusionModel::sq_ou(cfg.gamma, cfg.nu);
  }
  throw std::invalid_argument("unknown model");
}

std::map<std::string, double> model_parameters(const DiffusionModel& m) {
  switch (m.kind()) {
  case ModelKind::Rbm: return {{"mu", m.mu()}};
  case ModelKind::ReflBm01: return {};
  case ModelKind::SqOu: return {{"gamma", m.gamma()}, {"nu", m.nu()}};
  }
  return {};
}

ExperimentReport start_report(const std::string& name, const RunConfig& cfg, std::size_t n,
                              double dt) {
  ExperimentReport r;
  r.experiment = name;
  r.n = n;
  r.dt = dt;
  r.seed = cfg.seed;
  r.config = {{"model", cfg.model},
              {"mu", format_double(cfg.mu)},
              {"gamma", format_double(cfg.gamma)},
              {"nu", format_double(cfg.nu)},
              {"paths", std::to_string(n)},
              {"dt", format_double(dt)},
              {"seed", std::to_string(cfg.seed)},
              {"alpha_grid", join(cfg.alpha_grid)},
              {"beta_grid", join(cfg.beta_grid)},
              {"workers", std::to_string(cfg.workers)},
              {"samples_out", cfg.samples_out}};
  return r;
}

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double exp_cdf(double rate, double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); }

double relative_error(double estimate, double reference) {
  return std::abs(estimate - reference) / std::abs(reference);
}

} // namespace

// ---------------------------------------------------------------------------
// identity

ExperimentReport run_identity(const RunConfig& cfg) {
  const Stopwatch clock;
  const DiffusionModel model = build_model(cfg);
  const std::size_t n = cfg.paths.value_or(50000);
  const double dt = cfg.dt.value_or(1e-3);
  if (n == 0) throw std::invalid_argument("identity: --paths must be positive");

  ExperimentReport r = start_report("identity", cfg, n, dt);
  r.model = std::string(model.name());
  r.parameters = model_parameters(model);

  PathConfig path;
  path.dt = dt;
  const StreamFactory streams{cfg.seed, kDomainExcursions};
  const IdentitySamples s = identity_samples(model, path, n, streams, cfg.workers);
  const IdentitySamples other =
      identity_samples(model, path, n, streams.with_domain(kDomainExcursionsIndependent), cfg.workers);
  r.censored_fraction = static_cast<double>(s.censored + other.censored) / static_cast<double>(2 * n);
  r.add_metric("censored_fraction", r.censored_fraction, 1e-3);
  if (s.size() == 0 || other.size() == 0) return r;

  // The degenerate diffusion of the squared OU process is discretized more
  // coarsely near 0, so its equality-in-law checks use a wider bound.
  const double ks_tol = model.unit_diffusion() ? 0.02 : 0.03;
  r.add_metric("ks[i_plus,d0]", stats::ks_two_sample(s.i_plus, s.d0).statistic, ks_tol);
  r.add_metric("ks[i_minus,minus_g0]", stats::ks_two_sample(s.i_minus, s.minus_g0).statistic, ks_tol);
  r.add_metric("ks[i_plus,minus_g0]", stats::ks_two_sample(s.i_plus, s.minus_g0).statistic, ks_tol);
  r.add_metric("ks[i_plus,i_minus]", stats::ks_two_sample(s.i_plus, s.i_minus).statistic, ks_tol);
  std::vector<double> total(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) total[k] = s.i_plus[k] + s.i_minus[k];
  r.add_metric("ks[i_plus+i_minus,v_independent]", stats::ks_two_sample(total, other.v).statistic, ks_tol);

  // Joint Laplace transform of (I+, I-) and of (d0, -g0).
  for (double a : cfg.alpha_grid) {
    for (double b : cfg.beta_grid) {
      const double reference = model.kind() == ModelKind::Rbm ? analytics::lt_rbm(model.mu(), a, b)
                                                              : lt_joint_from_green(model, a, b);
      const auto occ = stats::empirical_joint_lt(s.i_plus, s.i_minus, a, b);
      r.add_metric(key("lt_occupation_err", a, b), std::abs(occ.value - reference),
                   std::max(3.0 * occ.std_error, 0.01));
      const auto ends = stats::empirical_joint_lt(s.d0, s.minus_g0, a, b);
      r.add_metric(key("lt_endpoints_err", a, b), std::abs(ends.value - reference),
                   std::max(3.0 * ends.std_error, 0.01));
    }
  }

  // Marginal transform of d0 against the model's closed form.
  for (double a : cfg.alpha_grid) {
    if (!(a > 0.0)) continue;
    const double reference = model.kind() == ModelKind::ReflBm01 ? analytics::lt_reflbm01_d0(a)
                                                                 : lt_joint_from_green(model, a, 0.0);
    std::vector<double> zeros(s.d0.size(), 0.0);
    const auto est = stats::empirical_joint_lt(s.d0, zeros, a, 0.0);
    r.add_metric(key("lt_d0_err", a), std::abs(est.value - reference),
                 std::max(3.0 * est.std_error, 0.01));
  }

  // Equal expectations of I+, I-, -g0 and d0.
  const double mean_ref = model.d0_mean();
  const double mean_tol = model.unit_diffusion() ? 0.02 : 0.03;
  r.add_metric("mean_rel_err[i_plus]", relative_error(stats::mean_estimate(s.i_plus).value, mean_ref), mean_tol);
  r.add_metric("mean_rel_err[i_minus]", relative_error(stats::mean_estimate(s.i_minus).value, mean_ref), mean_tol);
  r.add_metric("mean_rel_err[minus_g0]", relative_error(stats::mean_estimate(s.minus_g0).value, mean_ref), mean_tol);
  r.add_metric("mean_rel_err[d0]", relative_error(stats::mean_estimate(s.d0).value, mean_ref), mean_tol);

  // Closed-form law of d0.
  if (model.has_d0_density()) {
    const double d = stats::ks_one_sample(s.d0, [&](double t) { return 1.0 - model.d0_survival(t); });
    r.add_metric("ks[d0,closed_form_cdf]", d, model.unit_diffusion() ? 0.02 : 0.03);
  }

  // Uniformity of I+ given V.
  const auto bins = conditional_uniformity(s.i_plus, s.v, 10);
  // Grid-only hit detection distorts the shortest SqOU excursions most.
  const double uniformity_tol = model.unit_diffusion() ? 0.05 : 0.1;
  double worst = 0.0;
  std::size_t fewest = s.size();
  for (const auto& b : bins) {
    r.add_metric("uniformity_ks[bin=" + std::to_string(b.bin) + "]", b.ks, uniformity_tol);
    worst = std::max(worst, b.ks);
    fewest = std::min(fewest, b.count);
  }
  r.add_metric("uniformity_bin_shortfall", fewest >= 3000 ? 0.0 : 3000.0 - static_cast<double>(fewest), 0.0);

  // {X_s > X_0} independent of {d_0 > s}; P(X_s > X_0) = 1/2.
  const double s_lag = 0.3;
  const IndependenceResult ind = independence_check(model, path, s_lag, n,
                                                    streams.with_domain(kDomainIndependence), cfg.workers);
  const double joint_se = std::hypot(ind.joint.std_error, ind.product.std_error);
  // Reflection of the Euler iterate biases the SqOU horizon value slightly.
  const double floor = model.unit_diffusion() ? 0.0 : 0.01;
  r.add_metric("independence_err[s=0.3]", std::abs(ind.joint.value - ind.product.value),
               std::max(3.0 * joint_se, floor));
  r.add_metric("p_above_err[s=0.3]", std::abs(ind.above.value - 0.5), std::max(3.0 * ind.above.std_error, floor));

  if (!cfg.samples_out.empty()) {
    write_csv(cfg.samples_out, {"minus_g0", "d0", "i_plus", "i_minus"},
              {s.minus_g0, s.d0, s.i_plus, s.i_minus});
  }
  r.wall_time_seconds = clock.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// bridge

ExperimentReport run_bridge(const RunConfig& cfg) {
  const Stopwatch clock;
  const std::size_t n = cfg.paths.value_or(20000);
  const double dt = cfg.dt.value_or(5e-4);
  constexpr double length = 1.0;
  if (n == 0) throw std::invalid_argument("bridge: --paths must be positive");
  ExperimentReport r = start_report("bridge", cfg, n, dt);
  r.model = "bessel3_bridge";
  r.parameters = {{"l", length}};

  struct Row {
    double u, plus, minus, plus_vervaat, mid;
  };
  const StreamFactory streams{cfg.seed, kDomainBessel};
  const auto rows = parallel_map(n, cfg.workers, [&](std::size_t k) {
    Philox4x32 rng = streams(k);
    const BridgeSample b = sample_bessel3_bridge(length, dt, rng);
    const BridgeOccupation occ = bridge_occupation(b, rng);
    const auto image = vervaat(b, occ.u);
    return Row{occ.u, occ.i_plus, occ.i_minus, positive_occupation(image, b.mesh()),
               b.values[b.steps() / 2]};
  });
  std::vector<double> u(n), plus(n), minus(n), mid(n);
  std::size_t mismatches = 0;
  for (std::size_t k = 0; k < n; ++k) {
    u[k] = rows[k].u;
    plus[k] = rows[k].plus;
    minus[k] = rows[k].minus;
    mid[k] = rows[k].mid;
    if (rows[k].plus != rows[k].plus_vervaat) ++mismatches;
  }
  const auto uniform = [&](double x) { return std::clamp(x / length, 0.0, 1.0); };
  r.add_metric("ks[i_l_plus,uniform]", stats::ks_one_sample(plus, uniform), 0.02);
  r.add_metric("ks[i_l_minus,uniform]", stats::ks_one_sample(minus, uniform), 0.02);
  r.add_metric("ks[i_l_plus,i_l_minus]", stats::ks_two_sample(plus, minus).statistic, 0.02);
  r.add_metric("vervaat_mismatches", static_cast<double>(mismatches), 0.0);
  const auto mean_plus = stats::mean_estimate(plus);
  r.add_metric("mean_err[i_l_plus]", std::abs(mean_plus.value - 0.5 * length), 3.0 * mean_plus.std_error);
  // value(l/2) = sqrt(l/4) * chi_3 in law, E chi_3 = 2 sqrt(2 / pi).
  const double mid_ref = std::sqrt(length / 4.0) * 2.0 * std::sqrt(2.0 / std::numbers::pi);
  r.add_metric("mean_rel_err[bessel_mid]", relative_error(stats::mean_estimate(mid).value, mid_ref), 0.02);

  const auto brownian = brownian_bridge_occupation(length, dt, n, streams.with_domain(kDomainBrownianBridge),
                                                   cfg.workers);
  r.add_metric("ks[brownian_bridge_plus,uniform]", stats::ks_one_sample(brownian, uniform), 0.02);
  const auto mean_br = stats::mean_estimate(brownian);
  r.add_metric("mean_err[brownian_bridge_plus]", std::abs(mean_br.value - 0.5 * length), 3.0 * mean_br.std_error);

  if (!cfg.samples_out.empty()) {
    write_csv(cfg.samples_out, {"u", "i_l_plus", "i_l_minus", "brownian_bridge_plus"}, {u, plus, minus, brownian});
  }
  r.wall_time_seconds = clock.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// rayknight

ExperimentReport run_rayknight(const RunConfig& cfg) {
  const Stopwatch clock;
  if (parse_model_kind(cfg.model) != ModelKind::Rbm)
    throw std::invalid_argument("rayknight: only --model rbm is supported");
  const DiffusionModel model = DiffusionModel::rbm(cfg.mu);
  const double mu = model.mu();
  const std::size_t n = cfg.paths.value_or(50000);
  const double dy = cfg.dt.value_or(1e-4);
  if (n == 0) throw std::invalid_argument("rayknight: --paths must be positive");
  ExperimentReport r = start_report("rayknight", cfg, n, dy);
  r.model = "rbm";
  r.parameters = model_parameters(model);

  const StreamFactory streams{cfg.seed, kDomainProfiles};
  const auto profiles = local_time_profiles(mu, dy, n, streams, cfg.workers);
  std::vector<double> h0(n), lx(n);
  for (std::size_t k = 0; k < n; ++k) {
    h0[k] = profiles[k].h0_l;
    lx[k] = profiles[k].l_e_at_x0;
  }
  r.add_metric("mean_rel_err[h0_l]", relative_error(stats::mean_estimate(h0).value, 1.0 / (2.0 * mu)), 0.03);
  r.add_metric("ks[h0_l,exp(2mu)]", stats::ks_one_sample(h0, [&](double x) { return exp_cdf(2.0 * mu, x); }), 0.02);
  r.add_metric("mean_rel_err[l_e_at_x0]", relative_error(stats::mean_estimate(lx).value, 1.0 / mu), 0.03);
  r.add_metric("ks[l_e_at_x0,exp(mu)]", stats::ks_one_sample(lx, [&](double x) { return exp_cdf(mu, x); }), 0.02);

  const auto runs = cir_area_samples(mu, dy, n, streams.with_domain(kDomainCirArea), cfg.workers);
  std::vector<double> area(n), zeta(n);
  for (std::size_t k = 0; k < n; ++k) {
    area[k] = runs[k].area;
    zeta[k] = runs[k].zeta;
  }
  const auto hits = hit_exp_level_samples(mu, n, streams.with_domain(kDomainHitLevel), cfg.workers);
  PathConfig path;
  path.dt = 1e-3;
  std::size_t censored = 0;
  const auto d0 = d0_samples(model, path, n, streams.with_domain(kDomainExcursions), cfg.workers, &censored);
  r.censored_fraction = static_cast<double>(censored) / static_cast<double>(n);
  r.add_metric("censored_fraction", r.censored_fraction, 1e-3);

  const double mean_ref = model.d0_mean();
  r.add_metric("mean_rel_err[zeta]", relative_error(stats::mean_estimate(zeta).value, 1.0 / (2.0 * mu)), 0.03);
  r.add_metric("mean_rel_err[cir_area]", relative_error(stats::mean_estimate(area).value, mean_ref), 0.03);
  r.add_metric("mean_rel_err[hit_exp_level]", relative_error(stats::mean_estimate(hits).value, mean_ref), 0.02);
  r.add_metric("ks[cir_area,hit_exp_level]", stats::ks_two_sample(area, hits).statistic, 0.02);
  r.add_metric("ks[cir_area,d0]", stats::ks_two_sample(area, d0).statistic, 0.02);
  r.add_metric("ks[hit_exp_level,d0]", stats::ks_two_sample(hits, d0).statistic, 0.02);

  // Ray-Knight profile at X_0 against the band estimate of the excursion's
  // local time at X_0 from directly simulated legs.
  const std::size_t n_band = std::min<std::size_t>(n, 10000);
  PathConfig band;
  band.dt = 1e-4;
  band.band_at_start = true;
  band.band_eps = 0.02;
  const StreamFactory band_streams = streams.with_domain(kDomainBand);
  const auto band_rows = parallel_map(n_band, cfg.workers, [&](std::size_t k) {
    Philox4x32 forward = band_streams(2 * k);
    Philox4x32 backward = band_streams(2 * k + 1);
    const double x0 = model.stationary_sample(forward);
    const LegResult ahead = run_leg(model, x0, band, forward);
    const LegResult behind = run_leg(model, x0, band, backward);
    const double occupation = ahead.band_occupations.front().second + behind.band_occupations.front().second;
    return std::pair<double, bool>{occupation / (2.0 * band.band_eps), ahead.censored || behind.censored};
  });
  std::vector<double> band_lt;
  band_lt.reserve(n_band);
  for (const auto& [value, cens] : band_rows) {
    if (!cens) band_lt.push_back(value);
  }
  r.add_metric("ks[l_e_at_x0,band_estimate]", stats::ks_two_sample(lx, band_lt).statistic, 0.05);

  if (!cfg.samples_out.empty()) {
    write_csv(cfg.samples_out, {"zeta", "area", "l_e_at_x0", "h0_l", "hit_exp_level"}, {zeta, area, lx, h0, hits});
  }
  r.wall_time_seconds = clock.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// closed-form suites

namespace {

double integrate_density(const std::function<double(double)>& f, double q = 2.0) {
  return numerics::integrate_half_line(f, 1e-11, q);
}

double sqou_map_exponent(double nu) { return std::max(2.0, 2.0 / (1.0 + nu)); }

void add_levy_metrics(ExperimentReport& r, const DiffusionModel& rbm, const DiffusionModel& sqou) {
  for (const DiffusionModel* m : {&rbm, &sqou}) {
    const std::string tag(m->name());
    const double q = m->kind() == ModelKind::SqOu ? sqou_map_exponent(m->nu()) : 2.0;
    const double tail_mass = integrate_density([&](double t) { return analytics::levy_tail(*m, t); }, q);
    r.add_metric("levy_tail_mass_err[" + tag + "]", std::abs(tail_mass - m->total_mass()), 1e-6);
    const double v_mass = integrate_density([&](double v) { return analytics::v_density(*m, v); }, q);
    r.add_metric("v_density_mass_err[" + tag + "]", std::abs(v_mass - 1.0), 1e-6);
  }

  // RBM: the analytic V density equals v * (-d/dv n+) / M taken numerically.
  double worst = 0.0;
  for (double v : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const auto tail = [&](double t) { return analytics::levy_tail(rbm, t); };
    const double numeric = -v * numerics::central_difference(tail, v, 1e-6 * v) / rbm.total_mass();
    worst = std::max(worst, relative_error(numeric, analytics::v_density(rbm, v)));
  }
  r.add_metric("v_density_tail_derivative_rel_err[rbm]", worst, 1e-6);

  const auto mix = analytics::sqou_spectral(sqou.gamma(), sqou.nu(), 200);
  r.add_metric("spectral_weight_sum_err", std::abs(mix.total_weight() - 1.0), 1e-8);
  double dens = 0.0;
  for (double t : {0.5, 1.0, 2.0}) dens = std::max(dens, std::abs(mix.d0_density(t) - sqou.d0_density(t)));
  r.add_metric("spectral_d0_density_err", dens, 1e-6);
  r.add_metric("spectral_v_density_err[v=1]", std::abs(mix.v_density(1.0) - analytics::v_density(sqou, 1.0)), 1e-5);

  const auto rec = analytics::recurrence_test(analytics::to_unnormalized(mix, sqou.total_mass()));
  r.add_metric("recurrence_test_sqou_mismatch", rec.positively_recurrent ? 0.0 : 1.0, 0.0);
  analytics::SpectralMixture harmonic;
  harmonic.normalized = false;
  for (int k = 1; k <= 200; ++k) harmonic.atoms.push_back({static_cast<double>(k), static_cast<double>(k)});
  const auto rec_h = analytics::recurrence_test(harmonic);
  r.add_metric("recurrence_test_harmonic_mismatch", (!rec_h.positively_recurrent && rec_h.partial_sums_growing) ? 0.0 : 1.0, 0.0);
}

ExperimentReport closed_form_report(const std::string& name, const RunConfig& cfg) {
  ExperimentReport r = start_report(name, cfg, 0, 0.0);
  r.model = "all";
  r.parameters = {{"mu", cfg.mu}, {"gamma", cfg.gamma}, {"nu", cfg.nu}};
  return r;
}

} // namespace

ExperimentReport run_levy(const RunConfig& cfg) {
  const Stopwatch clock;
  ExperimentReport r = closed_form_report("levy", cfg);
  add_levy_metrics(r, DiffusionModel::rbm(cfg.mu), DiffusionModel::sq_ou(cfg.gamma, cfg.nu));
  r.wall_time_seconds = clock.seconds();
  return r;
}

ExperimentReport run_analytic_check(const RunConfig& cfg) {
  const Stopwatch clock;
  ExperimentReport r = closed_form_report("analytic-check", cfg);
  const DiffusionModel rbm = DiffusionModel::rbm(cfg.mu);
  const DiffusionModel refl = DiffusionModel::refl_bm01();
  const DiffusionModel sqou = DiffusionModel::sq_ou(cfg.gamma, cfg.nu);
  const double mu = cfg.mu;

  // Class-K residuals off the diagonal of the grid.
  const std::vector<std::pair<std::string, analytics::JointLT>> transforms{
      {"rbm_closed_form", analytics::joint_lt_rbm(mu)},
      {"rbm_green", analytics::joint_lt_from_green(rbm)},
      {"reflbm01_green", analytics::joint_lt_from_green(refl)},
      {"sqou_green", analytics::joint_lt_from_green(sqou)}};
  for (const auto& [tag, lt] : transforms) {
    double worst = 0.0;
    for (double a : kClassKGrid) {
      for (double b : kClassKGrid) {
        if (a != b) worst = std::max(worst, analytics::class_k_residual(lt, a, b));
      }
    }
    r.add_metric("class_k_residual[" + tag + "]", worst, 1e-8);
  }

  // Green-function route against the RBM closed form, on and off the diagonal.
  double worst = 0.0;
  std::size_t shape_violations = 0;
  for (double a : kClassKGrid) {
    for (double b : kClassKGrid) {
      worst = std::max(worst, std::abs(lt_joint_from_green(rbm, a, b) - analytics::lt_rbm(mu, a, b)));
    }
  }
  r.add_metric("lt_green_vs_closed_form[rbm]", worst, 1e-10);
  for (const DiffusionModel* m : {&rbm, &refl, &sqou}) {
    for (double b : kClassKGrid) {
      double prev = 1.0;
      for (double a : kClassKGrid) {
        if (!(a > b)) continue;
        const double v = lt_joint_from_green(*m, a, b);
        if (!(v > 0.0 && v < 1.0 && v < prev)) ++shape_violations;
        prev = v;
      }
    }
  }
  r.add_metric("lt_range_monotonicity_violations", static_cast<double>(shape_violations), 0.0);

  worst = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    worst = std::max(worst, std::abs(analytics::lt_reflbm01_d0(a) - lt_joint_from_green(refl, a, 0.0)));
  }
  r.add_metric("lt_reflbm01_d0_vs_green", worst, 1e-10);

  // Positive recurrence: alpha G_alpha(0,0) -> 1 / M.
  for (const DiffusionModel* m : {&rbm, &refl, &sqou}) {
    for (double a : {1e-3, 1e-4}) {
      r.add_metric(key("green_recurrence_rel_err[" + std::string(m->name()) + "]", a),
                   std::abs(a * m->green00(a) * m->total_mass() - 1.0), 0.01);
    }
  }

  // Densities: normalization and Laplace transforms.
  // Polar-type coordinates t = v u, s = v (1 - u), Jacobian v.
  const double joint_mass = numerics::integrate_half_line(
      [&](double v) {
        return numerics::adaptive_simpson(
            [&](double u) { return v * analytics::joint_density_rbm(mu, v * u, v * (1.0 - u)); }, 0.0, 1.0, 1e-12);
      },
      1e-10);
  r.add_metric("joint_density_mass_err[rbm]", std::abs(joint_mass - 1.0), 1e-6);
  worst = 0.0;
  const auto sum_density = [&](double v) { return analytics::v_density(rbm, v); };
  for (double x : {0.1, 0.7, 2.0}) {
    for (double y : {0.2, 1.5}) {
      worst = std::max(worst, std::abs(analytics::density_from_sum(sum_density, x, y) -
                                       analytics::joint_density_rbm(mu, x, y)));
    }
  }
  r.add_metric("density_from_sum_err[rbm]", worst, 1e-12);

  for (const DiffusionModel* m : {&rbm, &sqou}) {
    const std::string tag(m->name());
    const double q = m->kind() == ModelKind::SqOu ? sqou_map_exponent(m->nu()) : 2.0;
    const double mass = integrate_density([&](double t) { return m->d0_density(t); }, q);
    r.add_metric("d0_density_mass_err[" + tag + "]", std::abs(mass - 1.0), 1e-6);
    for (double a : {0.5, 1.0, 2.0}) {
      const double lt = integrate_density([&](double t) { return std::exp(-a * t) * m->d0_density(t); }, q);
      r.add_metric(key("d0_density_lt_err[" + tag + "]", a), std::abs(lt - lt_joint_from_green(*m, a, 0.0)), 1e-6);
    }
    worst = 0.0;
    for (double t : {0.05, 0.5, 2.0}) {
      const double tail = integrate_density([&](double x) { return m->d0_density(t + x); }, 2.0);
      worst = std::max(worst, std::abs(tail - m->d0_survival(t)));
    }
    r.add_metric("d0_survival_vs_quadrature[" + tag + "]", worst, 1e-6);
  }

  add_levy_metrics(r, rbm, sqou);

  worst = 0.0;
  for (double a : kClassKGrid) {
    for (double b : kClassKGrid) {
      if (a == b) continue;
      const double lhs = (std::sqrt(2.0 * a) - std::sqrt(2.0 * b)) / (a - b);
      worst = std::max(worst, std::abs(lhs - analytics::lt_null_reflbm(a, b)));
    }
  }
  r.add_metric("null_recurrent_identity_err", worst, 1e-12);

  r.wall_time_seconds = clock.seconds();
  return r;
}

ExperimentReport run_experiment(const std::string& name, const RunConfig& cfg) {
  if (name == "identity") return run_identity(cfg);
  if (name == "bridge") return run_bridge(cfg);
  if (name == "rayknight") return run_rayknight(cfg);
  if (name == "levy") return run_levy(cfg);
  if (name == "analytic-check") return run_analytic_check(cfg);
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

} // namespace exlab

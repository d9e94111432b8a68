#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exlab/report.hpp"

namespace exlab {

/// Resolved settings of one experiment run. Unset optionals take the
/// experiment's own defaults.
struct RunConfig {
  std::string model = "rbm";
  double mu = 1.0;
  double gamma = 1.0;
  double nu = -0.5;
  std::optional<std::size_t> paths;
  std::optional<double> dt;
  std::uint64_t seed = 1;
  std::vector<double> alpha_grid{0.5, 1.0, 2.0};
  std::vector<double> beta_grid{0.0, 0.5, 1.0};
  unsigned workers = 1;
  std::string samples_out;
};

/// Straddling-excursion identities: KS equalities in law, joint Laplace
/// transform, moments, conditional uniformity, independence lemma, and the
/// model's closed-form marginal of d0.
ExperimentReport run_identity(const RunConfig& cfg);

/// Excursion bridge occupation uniformity, Vervaat route, Levy's bridge law.
ExperimentReport run_bridge(const RunConfig& cfg);

/// Ray-Knight exponential laws and the CIR area / first-passage chain (RBM).
ExperimentReport run_rayknight(const RunConfig& cfg);

/// Levy tail, V density and spectral mixture relations (no simulation).
ExperimentReport run_levy(const RunConfig& cfg);

/// Full closed-form suite: class-K residuals, normalizations, transforms,
/// spectral mixtures, recurrence limits, null-recurrent identity.
ExperimentReport run_analytic_check(const RunConfig& cfg);

/// Dispatches on the subcommand name.
ExperimentReport run_experiment(const std::string& name, const RunConfig& cfg);

} // namespace exlab

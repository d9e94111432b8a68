#include "exlab/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <stdexcept>

#include "exlab/experiments.hpp"

namespace exlab {

namespace {

const char* const kSubcommands[][2] = {
    {"identity", "straddling-excursion identities (simulation)"},
    {"bridge", "excursion bridge occupation and Vervaat route (simulation)"},
    {"rayknight", "Ray-Knight exponential laws and CIR chain, RBM only (simulation)"},
    {"levy", "Levy tail, V density and spectral mixture (closed form)"},
    {"analytic-check", "full closed-form suite (no simulation)"},
};

void print_summary(std::ostream& out, const ExperimentReport& r) {
  for (const auto& m : r.metrics) {
    out << (m.pass ? "PASS " : "FAIL ") << m.name << " = " << format_double(m.value)
        << " (tol " << format_double(m.tolerance) << ")\n";
  }
  out << r.experiment << ": " << (r.pass() ? "pass" : "FAIL") << " in " << r.wall_time_seconds << " s\n";
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Straddling-excursion laboratory"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  RunConfig cfg;
  std::size_t paths = 0;
  double dt = 0.0;
  std::string out_path;

  app.add_option("--model", cfg.model, "Diffusion model")
      ->check(CLI::IsMember({"rbm", "reflbm01", "sqou"}))
      ->capture_default_str();
  app.add_option("--mu", cfg.mu, "RBM drift magnitude (mu > 0)")->capture_default_str();
  app.add_option("--gamma", cfg.gamma, "SqOU mean reversion (gamma > 0)")->capture_default_str();
  app.add_option("--nu", cfg.nu, "SqOU index (-1 < nu < 0)")->capture_default_str();
  auto* paths_opt = app.add_option("--paths", paths, "Number of samples (experiment default if unset)");
  auto* dt_opt = app.add_option("--dt", dt, "Time step, or level step dy for rayknight");
  app.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  app.add_option("--out", out_path, "Write the JSON report here (stdout if unset)");
  app.add_option("--samples-out", cfg.samples_out, "Write raw samples as CSV");
  app.add_option("--alpha-grid", cfg.alpha_grid, "Comma-separated alpha values")->delimiter(',');
  app.add_option("--beta-grid", cfg.beta_grid, "Comma-separated beta values")->delimiter(',');
  app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.set_config("--config", "", "Flat key=value file, '#' comments; flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : kSubcommands) subs.push_back(app.add_subcommand(name, help)->fallthrough());

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  if (paths_opt->count() > 0) cfg.paths = paths;
  if (dt_opt->count() > 0) cfg.dt = dt;

  std::string name;
  for (auto* s : subs) {
    if (s->parsed()) name = s->get_name();
  }

  ExperimentReport report;
  try {
    report = run_experiment(name, cfg);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitMetricFailure;
  }

  if (out_path.empty()) {
    out << to_json(report).dump(2) << "\n";
  } else {
    write_report(out_path, report);
    print_summary(out, report);
  }
  return report.pass() ? kExitPass : kExitMetricFailure;
}

} // namespace exlab

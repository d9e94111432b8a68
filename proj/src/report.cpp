#include "exlab/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace exlab {

void ExperimentReport::add_metric(std::string name, double value, double tolerance) {
  const bool ok = std::isfinite(value) && value <= tolerance;
  metrics.push_back({std::move(name), value, tolerance, ok});
}

const Metric* ExperimentReport::find(const std::string& name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

bool ExperimentReport::pass() const {
  for (const auto& m : metrics) {
    if (!m.pass) return false;
  }
  return true;
}

nlohmann::json to_json(const ExperimentReport& r) {
  nlohmann::json metrics = nlohmann::json::array();
  for (const auto& m : r.metrics) {
    metrics.push_back({{"name", m.name}, {"value", m.value}, {"tolerance", m.tolerance}, {"pass", m.pass}});
  }
  return {{"experiment", r.experiment},
          {"model", r.model},
          {"parameters", r.parameters},
          {"n", r.n},
          {"dt", r.dt},
          {"seed", r.seed},
          {"metrics", metrics},
          {"censored_fraction", r.censored_fraction},
          {"wall_time_seconds", r.wall_time_seconds},
          {"config", r.config},
          {"pass", r.pass()}};
}

ExperimentReport report_from_json(const nlohmann::json& j) {
  ExperimentReport r;
  r.experiment = j.at("experiment").get<std::string>();
  r.model = j.at("model").get<std::string>();
  r.parameters = j.at("parameters").get<std::map<std::string, double>>();
  r.n = j.at("n").get<std::uint64_t>();
  r.dt = j.at("dt").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& m : j.at("metrics")) {
    r.metrics.push_back({m.at("name").get<std::string>(), m.at("value").get<double>(),
                         m.at("tolerance").get<double>(), m.at("pass").get<bool>()});
  }
  r.censored_fraction = j.at("censored_fraction").get<double>();
  r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  if (j.contains("config")) r.config = j.at("config").get<std::map<std::string, std::string>>();
  return r;
}

void write_report(const std::filesystem::path& path, const ExperimentReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report file " + path.string());
  out << to_json(report).dump(2) << '\n';
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns) {
  if (header.size() != columns.size()) throw std::invalid_argument("write_csv: header/column mismatch");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw std::invalid_argument("write_csv: ragged columns");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open CSV file " + path.string());
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << format_double(columns[k][i]);
    out << '\n';
  }
}

} // namespace exlab

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace exlab {

/// One checked quantity: passes when value <= tolerance.
struct Metric {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  bool operator==(const Metric&) const = default;
};

struct ExperimentReport {
  std::string experiment;
  std::string model;
  std::map<std::string, double> parameters;
  std::uint64_t n = 0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  std::vector<Metric> metrics;
  double censored_fraction = 0.0;
  double wall_time_seconds = 0.0;
  /// Resolved configuration (flags > config file > defaults).
  std::map<std::string, std::string> config;

  void add_metric(std::string name, double value, double tolerance);
  const Metric* find(const std::string& name) const;
  bool pass() const;

  bool operator==(const ExperimentReport&) const = default;
};

nlohmann::json to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j);

void write_report(const std::filesystem::path& path, const ExperimentReport& report);

/// Comma-separated columns with a one-line header, shortest round-trip
/// decimal formatting, independent of the global locale.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns);

std::string format_double(double x);

} // namespace exlab

#pragma once

// Run configuration for the flqkd command-line tool, read from JSON.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace flqkd::cli {

/// Configuration problem; `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct AttackConfig {
  // Either an explicit f_E or a measured value with its uncertainty.
  std::optional<double> f_e;
  double f_e_hat = 0.0007;
  double sigma = 0.002;
  int n_sigma = 1;

  bool operator==(const AttackConfig&) const = default;
};

struct SweepConfig {
  double n_s_min = 5e-4;
  double n_s_max = 5e-2;
  int points = 200;
  bool log_scale = true;

  bool operator==(const SweepConfig&) const = default;
};

struct OptimizeConfig {
  double n_s_min = 1e-5;
  double n_s_max = 1.0;
  double tolerance = 1e-6;
  std::vector<int> n_sigmas{1, 2, 3, 4, 5};

  bool operator==(const OptimizeConfig&) const = default;
};

struct MonitorConfig {
  // Simulator fields in the C API's key order; values default from the library.
  std::vector<std::pair<std::string, double>> fields;
  std::uint64_t seed = 0;
  std::vector<double> f_e_values{0.0, 0.25, 0.5, 0.75, 1.0};
  int trials = 10;
  int null_trials = 30;

  bool operator==(const MonitorConfig&) const = default;
};

struct LimitConfig {
  std::optional<double> ske;  // when unset, the optimised SKE at the attack's f_E

  bool operator==(const LimitConfig&) const = default;
};

struct OutputConfig {
  std::string csv_path;  // empty: stdout
  std::string svg_path;  // empty: no plot
  int precision = 9;

  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  std::vector<std::pair<std::string, double>> system;
  AttackConfig attack;
  SweepConfig sweep;
  OptimizeConfig optimize;
  std::optional<MonitorConfig> monitor;
  LimitConfig limit;
  OutputConfig output;

  double system_value(const std::string& key) const;
  /// f_E used for "active" attack curves.
  double active_f_e(int n_sigma) const;

  bool operator==(const RunConfig&) const = default;
};

/// Library defaults for every section except monitor.
RunConfig default_config();

/// Parses JSON text. Omitted fields keep their defaults; unknown keys are rejected.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Effective configuration, including every default, as JSON.
nlohmann::ordered_json dump_config(const RunConfig& config);

}  // namespace flqkd::cli

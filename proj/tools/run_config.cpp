#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "flqkd/flqkd.h"

namespace flqkd::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const char* const kSystemKeys[] = {"bandwidth_hz", "modulation_rate", "modes_per_bit",
                                   "kappa",        "eta",             "kappa_b",
                                   "gain_b",       "ase_brightness_b", "beta",
                                   "photon_energy_j"};

const char* const kMonitorKeys[] = {"pair_rate",     "ase_rate_at_source", "kappa",
                                    "f_e_true",      "tap_alice",          "tap_bob",
                                    "det_eff_idler", "det_eff_alice",      "det_eff_bob",
                                    "dead_time",     "coinc_window",       "shift_offset",
                                    "duration",      "dark_count_rate"};

// Resolves line numbers for diagnostics by locating a quoted key in the source.
class Locator {
 public:
  explicit Locator(const std::string& text) : text_(text) {}

  int line_of(const std::string& key, std::size_t from = 0) const {
    const auto pos = text_.find('"' + key + '"', from);
    if (pos == std::string::npos) return 0;
    return line_at(pos);
  }

  int section_key_line(const std::string& section, const std::string& key) const {
    const auto start = text_.find('"' + section + '"');
    if (start == std::string::npos) return 0;
    const int line = line_of(key, start);
    return line > 0 ? line : line_at(start);
  }

  int line_at(std::size_t byte) const {
    byte = std::min(byte, text_.size());
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<long>(byte), '\n'));
  }

 private:
  const std::string& text_;
};

class Reader {
 public:
  Reader(const Locator& loc, std::string section, const json& node)
      : loc_(loc), section_(std::move(section)), node_(node) {
    if (!node_.is_object()) throw ConfigError("'" + section_ + "' must be an object", loc_.line_of(section_));
  }

  [[noreturn]] void error(const std::string& key, const std::string& what) const {
    throw ConfigError(section_ + "." + key + ": " + what, loc_.section_key_line(section_, key));
  }

  void reject_unknown(std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, value] : node_.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) error(key, "unknown key");
    }
  }

  template <typename Range>
  void reject_unknown_range(const Range& allowed, std::initializer_list<std::string_view> extra = {}) const {
    for (const auto& [key, value] : node_.items()) {
      const bool known = std::find(std::begin(allowed), std::end(allowed), key) != std::end(allowed) ||
                         std::find(extra.begin(), extra.end(), key) != extra.end();
      if (!known) error(key, "unknown key");
    }
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  double number(const std::string& key) const {
    const json& v = node_.at(key);
    if (!v.is_number()) error(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) error(key, "expected a finite number");
    return d;
  }

  void read(const std::string& key, double& out) const {
    if (has(key)) out = number(key);
  }

  void read(const std::string& key, int& out) const {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_number_integer()) error(key, "expected an integer");
    out = v.get<int>();
  }

  void read(const std::string& key, bool& out) const {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_boolean()) error(key, "expected true or false");
    out = v.get<bool>();
  }

  void read(const std::string& key, std::string& out) const {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_string()) error(key, "expected a string");
    out = v.get<std::string>();
  }

  void read(const std::string& key, std::uint64_t& out) const {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      error(key, "expected a non-negative integer");
    }
    out = v.get<std::uint64_t>();
  }

  template <typename T>
  void read_list(const std::string& key, std::vector<T>& out) const {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_array()) error(key, "expected an array");
    out.clear();
    for (const json& item : v) {
      if constexpr (std::is_integral_v<T>) {
        if (!item.is_number_integer()) error(key, "expected integers");
      } else {
        if (!item.is_number()) error(key, "expected numbers");
      }
      out.push_back(item.get<T>());
    }
  }

  const Locator& locator() const { return loc_; }

 private:
  const Locator& loc_;
  std::string section_;
  const json& node_;
};

double& field(std::vector<std::pair<std::string, double>>& fields, const std::string& key) {
  for (auto& [k, v] : fields) {
    if (k == key) return v;
  }
  throw std::logic_error("missing field " + key);
}

MonitorConfig default_monitor() {
  MonitorConfig m;
  flqkd_monitor_config* handle = nullptr;
  flqkd_monitor_config_create(&handle);
  for (const char* key : kMonitorKeys) {
    double v = 0.0;
    flqkd_monitor_config_get(handle, key, &v);
    m.fields.emplace_back(key, v);
  }
  flqkd_monitor_config_get_seed(handle, &m.seed);
  flqkd_monitor_config_destroy(handle);
  return m;
}

void check_system(const RunConfig& config, const Locator& loc) {
  flqkd_params* params = nullptr;
  flqkd_params_create(&params);
  for (const auto& [k, v] : config.system) flqkd_params_set(params, k.c_str(), v);
  const flqkd_status status = flqkd_params_validate(params);
  const std::string message = flqkd_last_error();
  flqkd_params_destroy(params);
  if (status != FLQKD_OK) {
    const std::string key = message.substr(0, message.find(' '));
    throw ConfigError("system." + message, loc.section_key_line("system", key));
  }
}

void check_monitor(const MonitorConfig& m, const Locator& loc) {
  flqkd_monitor_config* handle = nullptr;
  flqkd_monitor_config_create(&handle);
  for (const auto& [k, v] : m.fields) flqkd_monitor_config_set(handle, k.c_str(), v);
  const flqkd_status status = flqkd_monitor_config_validate(handle);
  const std::string message = flqkd_last_error();
  flqkd_monitor_config_destroy(handle);
  if (status != FLQKD_OK) {
    const std::string key = message.substr(0, message.find(' '));
    throw ConfigError("monitor." + message, loc.section_key_line("monitor", key));
  }
  if (m.trials < 2) throw ConfigError("monitor.trials: must be >= 2", loc.section_key_line("monitor", "trials"));
  if (m.null_trials < 2) {
    throw ConfigError("monitor.null_trials: must be >= 2", loc.section_key_line("monitor", "null_trials"));
  }
  for (double fe : m.f_e_values) {
    if (!(fe >= 0.0 && fe <= 1.0)) {
      throw ConfigError("monitor.f_e_values: entries must lie in [0, 1]",
                        loc.section_key_line("monitor", "f_e_values"));
    }
  }
}

}  // namespace

double RunConfig::system_value(const std::string& key) const {
  for (const auto& [k, v] : system) {
    if (k == key) return v;
  }
  throw std::logic_error("unknown system key " + key);
}

double RunConfig::active_f_e(int n_sigma) const {
  if (attack.f_e) return *attack.f_e;
  double ub = 0.0;
  if (flqkd_f_e_upper_bound(attack.f_e_hat, attack.sigma, n_sigma, &ub) != FLQKD_OK) {
    throw ConfigError(std::string("attack: ") + flqkd_last_error(), 0);
  }
  return ub;
}

RunConfig default_config() {
  RunConfig config;
  flqkd_params* params = nullptr;
  flqkd_params_create(&params);
  for (const char* key : kSystemKeys) {
    double v = 0.0;
    flqkd_params_get(params, key, &v);
    config.system.emplace_back(key, v);
  }
  flqkd_params_destroy(params);
  return config;
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const Locator loc(text);
    throw ConfigError(std::string("malformed JSON: ") + e.what(), loc.line_at(e.byte > 0 ? e.byte - 1 : 0));
  }
  const Locator loc(text);
  if (!root.is_object()) throw ConfigError("configuration must be a JSON object", 1);

  RunConfig config = default_config();
  for (const auto& [key, value] : root.items()) {
    static const std::string_view sections[] = {"system", "attack", "sweep", "optimize",
                                                "monitor", "limit", "output"};
    if (std::find(std::begin(sections), std::end(sections), key) == std::end(sections)) {
      throw ConfigError("unknown section '" + key + "'", loc.line_of(key));
    }
  }

  if (root.contains("system")) {
    Reader r(loc, "system", root["system"]);
    r.reject_unknown_range(kSystemKeys);
    for (const char* key : kSystemKeys) r.read(key, field(config.system, key));
    // M follows W / R unless given, once either of them is overridden.
    if (!r.has("modes_per_bit") && (r.has("bandwidth_hz") || r.has("modulation_rate"))) {
      field(config.system, "modes_per_bit") =
          config.system_value("bandwidth_hz") / config.system_value("modulation_rate");
    }
  }
  check_system(config, loc);

  if (root.contains("attack")) {
    Reader r(loc, "attack", root["attack"]);
    r.reject_unknown({"f_e", "f_e_hat", "sigma", "n_sigma"});
    if (r.has("f_e")) {
      if (r.has("f_e_hat") || r.has("sigma") || r.has("n_sigma")) {
        r.error("f_e", "give either f_e or {f_e_hat, sigma, n_sigma}, not both");
      }
      config.attack.f_e = r.number("f_e");
      if (!(*config.attack.f_e >= 0.0 && *config.attack.f_e < 1.0)) r.error("f_e", "must lie in [0, 1)");
    }
    r.read("f_e_hat", config.attack.f_e_hat);
    r.read("sigma", config.attack.sigma);
    r.read("n_sigma", config.attack.n_sigma);
    if (config.attack.sigma < 0) r.error("sigma", "must be >= 0");
    if (config.attack.n_sigma < 1) r.error("n_sigma", "must be >= 1");
  }

  if (root.contains("sweep")) {
    Reader r(loc, "sweep", root["sweep"]);
    r.reject_unknown({"n_s_min", "n_s_max", "points", "log_scale"});
    r.read("n_s_min", config.sweep.n_s_min);
    r.read("n_s_max", config.sweep.n_s_max);
    r.read("points", config.sweep.points);
    r.read("log_scale", config.sweep.log_scale);
    if (config.sweep.points < 2) r.error("points", "must be >= 2");
    if (!(config.sweep.n_s_min < config.sweep.n_s_max)) r.error("n_s_min", "must be < n_s_max");
    if (config.sweep.n_s_min < 0) r.error("n_s_min", "must be >= 0");
    if (config.sweep.log_scale && config.sweep.n_s_min <= 0) r.error("n_s_min", "must be > 0 on a log scale");
  }

  if (root.contains("optimize")) {
    Reader r(loc, "optimize", root["optimize"]);
    r.reject_unknown({"n_s_min", "n_s_max", "tolerance", "n_sigmas"});
    r.read("n_s_min", config.optimize.n_s_min);
    r.read("n_s_max", config.optimize.n_s_max);
    r.read("tolerance", config.optimize.tolerance);
    r.read_list("n_sigmas", config.optimize.n_sigmas);
    if (!(config.optimize.n_s_min >= 0 && config.optimize.n_s_min < config.optimize.n_s_max)) {
      r.error("n_s_min", "need 0 <= n_s_min < n_s_max");
    }
    if (!(config.optimize.tolerance > 0)) r.error("tolerance", "must be > 0");
    if (config.optimize.n_sigmas.empty()) r.error("n_sigmas", "must not be empty");
    for (int n : config.optimize.n_sigmas) {
      if (n < 1) r.error("n_sigmas", "entries must be >= 1");
    }
  }

  if (root.contains("monitor")) {
    Reader r(loc, "monitor", root["monitor"]);
    r.reject_unknown_range(kMonitorKeys, {"seed", "f_e_values", "trials", "null_trials"});
    MonitorConfig m = default_monitor();
    for (const char* key : kMonitorKeys) r.read(key, field(m.fields, key));
    r.read("seed", m.seed);
    r.read_list("f_e_values", m.f_e_values);
    r.read("trials", m.trials);
    r.read("null_trials", m.null_trials);
    check_monitor(m, loc);
    config.monitor = std::move(m);
  }

  if (root.contains("limit")) {
    Reader r(loc, "limit", root["limit"]);
    r.reject_unknown({"ske"});
    if (r.has("ske")) config.limit.ske = r.number("ske");
  }

  if (root.contains("output")) {
    Reader r(loc, "output", root["output"]);
    r.reject_unknown({"csv_path", "svg_path", "precision"});
    r.read("csv_path", config.output.csv_path);
    r.read("svg_path", config.output.svg_path);
    r.read("precision", config.output.precision);
    if (config.output.precision < 1 || config.output.precision > 17) r.error("precision", "must lie in [1, 17]");
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'", 0);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

ordered_json dump_config(const RunConfig& config) {
  ordered_json out;
  ordered_json system = ordered_json::object();
  for (const auto& [k, v] : config.system) system[k] = v;
  out["system"] = system;

  ordered_json attack = ordered_json::object();
  if (config.attack.f_e) {
    attack["f_e"] = *config.attack.f_e;
  } else {
    attack["f_e_hat"] = config.attack.f_e_hat;
    attack["sigma"] = config.attack.sigma;
    attack["n_sigma"] = config.attack.n_sigma;
  }
  out["attack"] = attack;

  out["sweep"] = {{"n_s_min", config.sweep.n_s_min},
                  {"n_s_max", config.sweep.n_s_max},
                  {"points", config.sweep.points},
                  {"log_scale", config.sweep.log_scale}};
  out["optimize"] = {{"n_s_min", config.optimize.n_s_min},
                     {"n_s_max", config.optimize.n_s_max},
                     {"tolerance", config.optimize.tolerance},
                     {"n_sigmas", config.optimize.n_sigmas}};
  if (config.monitor) {
    ordered_json monitor = ordered_json::object();
    for (const auto& [k, v] : config.monitor->fields) monitor[k] = v;
    monitor["seed"] = config.monitor->seed;
    monitor["f_e_values"] = config.monitor->f_e_values;
    monitor["trials"] = config.monitor->trials;
    monitor["null_trials"] = config.monitor->null_trials;
    out["monitor"] = monitor;
  }
  ordered_json limit = ordered_json::object();
  if (config.limit.ske) limit["ske"] = *config.limit.ske;
  out["limit"] = limit;
  out["output"] = {{"csv_path", config.output.csv_path},
                   {"svg_path", config.output.svg_path},
                   {"precision", config.output.precision}};
  return out;
}

}  // namespace flqkd::cli

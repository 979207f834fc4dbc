// flqkd: batch front end for the floodlight-QKD rate and monitor model.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kConfigError = 2,
  kNumericalError = 3,
  kEstimatorUndefined = 4,
};

}  // namespace

int main(int argc, char** argv) {
  using namespace flqkd::cli;

  CLI::App app{"Floodlight QKD secret-key-rate model and channel-monitor simulator"};
  app.set_version_flag("--version", std::string(flqkd_version()));

  std::string config_path;
  std::string out_path;
  std::string svg_path;
  std::optional<std::uint64_t> seed;
  bool dump = false;

  app.option_defaults()->always_capture_default();
  app.add_option("--config", config_path, "JSON configuration file (defaults apply when omitted)")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "CSV output path (default: output.csv_path, else stdout)");
  app.add_option("--svg", svg_path, "Also render an SVG plot to this path");
  app.add_option("--seed", seed, "Override the monitor simulator seed");
  app.add_flag("--dump-config", dump, "Print the effective configuration as JSON and exit");

  struct Sub {
    const char* name;
    const char* help;
    CommandResult (*run)(const RunConfig&);
  };
  const Sub subs[] = {
      {"rate-curve", "Shannon information, Holevo bounds and key rates over a brightness grid", cmd_rate_curve},
      {"optimize", "Brightness-optimised key rate for each confidence level", cmd_optimize},
      {"ber-curve", "Alice's BER and Eve's passive Chernoff bound over photons per bit", cmd_ber_curve},
      {"monitor-sim", "Monte Carlo sweep of the f_E estimator plus a null test", cmd_monitor_sim},
      {"limit", "Compare the achieved SKE with the one-way single-mode limit", cmd_limit},
  };
  std::vector<CLI::App*> handles;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    handles.push_back(sub);
  }
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  RunConfig config;
  try {
    config = config_path.empty() ? default_config() : load_config(config_path);
    if (seed) {
      if (!config.monitor) throw ConfigError("--seed needs a 'monitor' section in the config", 0);
      config.monitor->seed = *seed;
    }
    if (!out_path.empty()) config.output.csv_path = out_path;
    if (!svg_path.empty()) config.output.svg_path = svg_path;
  } catch (const ConfigError& e) {
    std::cerr << "flqkd: config error";
    if (!config_path.empty()) std::cerr << " in " << config_path;
    if (e.line() > 0) std::cerr << " at line " << e.line();
    std::cerr << ": " << e.what() << '\n';
    return kConfigError;
  }

  if (dump) {
    std::cout << dump_config(config).dump(2) << '\n';
    return kOk;
  }

  const Sub* chosen = nullptr;
  for (std::size_t i = 0; i < handles.size(); ++i) {
    if (handles[i]->parsed()) chosen = &subs[i];
  }
  if (chosen == nullptr) {
    std::cerr << app.help();
    return kConfigError;
  }

  try {
    const CommandResult result = chosen->run(config);
    const std::string csv = result.table.to_csv(config.output.precision);
    // Render everything before touching the filesystem.
    std::string svg;
    if (!config.output.svg_path.empty()) {
      if (!result.plot) throw ConfigError(std::string(chosen->name) + " has no plot output", 0);
      svg = render_svg(result.table, *result.plot);
    }
    if (config.output.csv_path.empty()) {
      std::cout << csv;
    } else {
      write_file_atomically(config.output.csv_path, csv);
    }
    if (!svg.empty()) write_file_atomically(config.output.svg_path, svg);
  } catch (const ConfigError& e) {
    std::cerr << "flqkd: config error";
    if (e.line() > 0) std::cerr << " at line " << e.line();
    std::cerr << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const LibraryError& e) {
    std::cerr << "flqkd: " << e.what() << '\n';
    switch (e.status()) {
      case FLQKD_ERR_ESTIMATOR_UNDEFINED: return kEstimatorUndefined;
      case FLQKD_ERR_VALIDATION:
      case FLQKD_ERR_INVALID_ARGUMENT: return kConfigError;
      default: return kNumericalError;
    }
  } catch (const std::exception& e) {
    std::cerr << "flqkd: " << e.what() << '\n';
    return kIoError;
  }
  return kOk;
}

#include "commands.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <vector>

namespace flqkd::cli {

namespace {

void check(flqkd_status status, const char* what) {
  if (status != FLQKD_OK) throw LibraryError(status, std::string(what) + ": " + flqkd_last_error());
}

using ParamsHandle = std::unique_ptr<flqkd_params, decltype(&flqkd_params_destroy)>;
using MonitorHandle = std::unique_ptr<flqkd_monitor_config, decltype(&flqkd_monitor_config_destroy)>;

ParamsHandle make_params(const RunConfig& config) {
  flqkd_params* raw = nullptr;
  check(flqkd_params_create(&raw), "params_create");
  ParamsHandle params(raw, &flqkd_params_destroy);
  for (const auto& [key, value] : config.system) check(flqkd_params_set(raw, key.c_str(), value), "params_set");
  check(flqkd_params_validate(raw), "system parameters");
  return params;
}

MonitorHandle make_monitor(const MonitorConfig& m) {
  flqkd_monitor_config* raw = nullptr;
  check(flqkd_monitor_config_create(&raw), "monitor_config_create");
  MonitorHandle handle(raw, &flqkd_monitor_config_destroy);
  for (const auto& [key, value] : m.fields) {
    check(flqkd_monitor_config_set(raw, key.c_str(), value), "monitor_config_set");
  }
  check(flqkd_monitor_config_set_seed(raw, m.seed), "monitor_config_set_seed");
  check(flqkd_monitor_config_validate(raw), "monitor config");
  return handle;
}

std::string warning_text(uint32_t bits) {
  std::string out;
  auto add = [&](uint32_t flag, const char* name) {
    if (!(bits & flag)) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  add(FLQKD_WARN_SATURATION_ALICE, "saturation_alice");
  add(FLQKD_WARN_SATURATION_BOB, "saturation_bob");
  add(FLQKD_WARN_SATURATION_IDLER, "saturation_idler");
  return out;
}

flqkd_optimum optimise(const flqkd_params* params, const OptimizeConfig& opt, double f_e) {
  flqkd_optimum best{};
  check(flqkd_optimize_brightness(params, f_e, opt.n_s_min, opt.n_s_max, opt.tolerance, &best),
        "optimize_brightness");
  return best;
}

}  // namespace

std::vector<double> brightness_grid(const SweepConfig& sweep) {
  std::vector<double> grid(static_cast<std::size_t>(sweep.points));
  for (int i = 0; i < sweep.points; ++i) {
    const double f = static_cast<double>(i) / (sweep.points - 1);
    grid[i] = sweep.log_scale
                  ? std::exp(std::log(sweep.n_s_min) + f * (std::log(sweep.n_s_max) - std::log(sweep.n_s_min)))
                  : sweep.n_s_min + f * (sweep.n_s_max - sweep.n_s_min);
  }
  // Pin the end points exactly.
  grid.front() = sweep.n_s_min;
  grid.back() = sweep.n_s_max;
  return grid;
}

CommandResult cmd_rate_curve(const RunConfig& config) {
  const ParamsHandle params = make_params(config);
  const double f_e = config.active_f_e(config.attack.n_sigma);

  Table table({"ppb", "n_s", "ber", "i_ab", "chi_ub_active", "chi_ub_passive", "ske_active",
               "ske_passive", "skr_active", "skr_passive"});
  for (double n_s : brightness_grid(config.sweep)) {
    flqkd_rate_point active{}, passive{};
    check(flqkd_skr_lower_bound(params.get(), n_s, f_e, &active), "skr_lower_bound");
    check(flqkd_skr_lower_bound(params.get(), n_s, 0.0, &passive), "skr_lower_bound");
    table.add_row({num(active.ppb), num(n_s), num(active.ber), num(active.i_ab), num(active.chi_ub),
                   num(passive.chi_ub), num(active.ske), num(passive.ske), num(active.skr),
                   num(passive.skr)});
  }
  PlotSpec plot{"Information rates versus photons per bit", "ppb",
                {"i_ab", "ske_passive", "ske_active", "chi_ub_active", "chi_ub_passive"},
                config.sweep.log_scale, false, "photons per bit", "bits per channel use"};
  return {std::move(table), plot};
}

CommandResult cmd_optimize(const RunConfig& config) {
  const ParamsHandle params = make_params(config);
  Table table({"n_sigma", "f_e_ub", "n_s_opt", "ppb_opt", "ber", "i_ab", "chi_ub", "ske", "skr",
               "no_positive_key"});
  auto emit = [&](int n_sigma, double f_e) {
    const flqkd_optimum best = optimise(params.get(), config.optimize, f_e);
    table.add_row({num(n_sigma), num(f_e), num(best.point.n_s), num(best.point.ppb), num(best.point.ber),
                   num(best.point.i_ab), num(best.point.chi_ub), num(best.point.ske), num(best.point.skr),
                   num(best.positive_key ? 0 : 1)});
  };
  if (config.attack.f_e) {
    emit(0, *config.attack.f_e);
  } else {
    for (int n : config.optimize.n_sigmas) emit(n, config.active_f_e(n));
  }
  return {std::move(table), std::nullopt};
}

CommandResult cmd_ber_curve(const RunConfig& config) {
  const ParamsHandle params = make_params(config);
  Table table({"ppb", "ber_alice_theory", "ber_eve_qcb"});
  const double modes = config.system_value("modes_per_bit");
  for (double n_s : brightness_grid(config.sweep)) {
    double alice = 0, eve = 0;
    check(flqkd_alice_ber(params.get(), n_s, &alice), "alice_ber");
    check(flqkd_chernoff_ber_passive(params.get(), n_s, &eve), "chernoff_ber_passive");
    table.add_row({num(modes * n_s), num(alice), num(eve)});
  }
  PlotSpec plot{"BER versus photons per bit", "ppb", {"ber_alice_theory", "ber_eve_qcb"},
                config.sweep.log_scale, true, "photons per bit", "bit-error rate"};
  return {std::move(table), plot};
}

CommandResult cmd_monitor_sim(const RunConfig& config) {
  if (!config.monitor) throw ConfigError("monitor-sim needs a 'monitor' section", 0);
  const MonitorConfig& m = *config.monitor;
  const MonitorHandle handle = make_monitor(m);

  Table table({"kind", "f_e_true", "mean_estimate", "std_dev", "trials", "warnings"});
  std::vector<flqkd_sweep_row> rows(m.f_e_values.size());
  check(flqkd_sweep_injection(handle.get(), m.f_e_values.data(), m.f_e_values.size(), m.trials, rows.data()),
        "sweep_injection");
  for (const auto& r : rows) {
    table.add_row({text("sweep"), num(r.f_e_true), num(r.mean_estimate), num(r.std_dev), num(r.trials),
                   text(warning_text(r.warnings))});
  }

  // Null test: no injection, its own seed stream.
  uint64_t null_seed = m.seed ^ 0x6E756C6C74657374ULL;
  check(flqkd_monitor_config_set_seed(handle.get(), null_seed), "monitor_config_set_seed");
  const double zero = 0.0;
  flqkd_sweep_row null_row{};
  check(flqkd_sweep_injection(handle.get(), &zero, 1, m.null_trials, &null_row), "sweep_injection");
  table.add_row({text("null"), num(null_row.f_e_true), num(null_row.mean_estimate), num(null_row.std_dev),
                 num(null_row.trials), text(warning_text(null_row.warnings))});

  PlotSpec plot{"Measured versus injected f_E", "f_e_true", {"f_e_true", "mean_estimate"}, false, false,
                "injected f_E", "estimated f_E"};
  return {std::move(table), plot};
}

CommandResult cmd_limit(const RunConfig& config) {
  const double kappa = config.system_value("kappa");
  double limit = 0;
  check(flqkd_pirandola_limit(kappa, &limit), "pirandola_limit");

  double ske = 0;
  if (config.limit.ske) {
    ske = *config.limit.ske;
  } else {
    const ParamsHandle params = make_params(config);
    ske = optimise(params.get(), config.optimize, config.active_f_e(config.attack.n_sigma)).point.ske;
  }
  double db = 0;
  check(flqkd_advantage_db(ske, limit, &db), "advantage_db");

  Table table({"kappa", "limit_bits_per_mode", "ske", "advantage_db"});
  table.add_row({num(kappa), num(limit), num(ske), num(db)});
  return {std::move(table), std::nullopt};
}

}  // namespace flqkd::cli

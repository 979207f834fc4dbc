#include "flqkd/flqkd.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <string_view>

#include "flqkd/errors.hpp"
#include "flqkd/eve_model.hpp"
#include "flqkd/gaussian.hpp"
#include "flqkd/monitor.hpp"
#include "flqkd/rate_model.hpp"
#include "flqkd/special.hpp"

struct flqkd_params {
  flqkd::SystemParams value;
};

struct flqkd_monitor_config {
  flqkd::MonitorSimConfig value;
};

namespace {

thread_local std::string last_error;

flqkd_status record(flqkd_status status, const char* message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
flqkd_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return FLQKD_OK;
  } catch (const flqkd::Error& e) {
    switch (e.kind()) {
      case flqkd::ErrorKind::Validation: return record(FLQKD_ERR_VALIDATION, e.what());
      case flqkd::ErrorKind::Domain: return record(FLQKD_ERR_DOMAIN, e.what());
      case flqkd::ErrorKind::Unphysical: return record(FLQKD_ERR_UNPHYSICAL, e.what());
      case flqkd::ErrorKind::EstimatorUndefined:
        return record(FLQKD_ERR_ESTIMATOR_UNDEFINED, e.what());
    }
    return record(FLQKD_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return record(FLQKD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(FLQKD_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(FLQKD_ERR_INTERNAL, "unknown error");
  }
}

#define FLQKD_REQUIRE(ptr)                                                     \
  do {                                                                         \
    if ((ptr) == nullptr) return record(FLQKD_ERR_INVALID_ARGUMENT, #ptr " is null"); \
  } while (0)

flqkd::Matrix6 load(const double cov[36]) {
  flqkd::Matrix6 m;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) m(r, c) = cov[6 * r + c];
  return m;
}

void store(const flqkd::Covariance3Mode& cov, double out[36]) {
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) out[6 * r + c] = cov(r, c);
}

flqkd_rate_point to_c(const flqkd::RatePoint& p) {
  return flqkd_rate_point{p.n_s, p.ppb, p.ber, p.i_ab, p.chi_ub, p.ske, p.skr};
}

double* params_field(flqkd::SystemParams& p, std::string_view key) {
  if (key == "bandwidth_hz") return &p.bandwidth_hz;
  if (key == "modulation_rate") return &p.modulation_rate;
  if (key == "modes_per_bit") return &p.modes_per_bit;
  if (key == "kappa") return &p.kappa;
  if (key == "eta") return &p.eta;
  if (key == "kappa_b") return &p.kappa_b;
  if (key == "gain_b") return &p.gain_b;
  if (key == "ase_brightness_b") return &p.ase_brightness_b;
  if (key == "beta") return &p.beta;
  if (key == "photon_energy_j") return &p.photon_energy_j;
  return nullptr;
}

double* monitor_field(flqkd::MonitorSimConfig& c, std::string_view key) {
  if (key == "pair_rate") return &c.pair_rate;
  if (key == "ase_rate_at_source") return &c.ase_rate_at_source;
  if (key == "kappa") return &c.kappa;
  if (key == "f_e_true") return &c.f_e_true;
  if (key == "tap_alice") return &c.tap_alice;
  if (key == "tap_bob") return &c.tap_bob;
  if (key == "det_eff_idler") return &c.det_eff_idler;
  if (key == "det_eff_alice") return &c.det_eff_alice;
  if (key == "det_eff_bob") return &c.det_eff_bob;
  if (key == "dead_time") return &c.dead_time;
  if (key == "coinc_window") return &c.coinc_window;
  if (key == "shift_offset") return &c.shift_offset;
  if (key == "duration") return &c.duration;
  if (key == "dark_count_rate") return &c.dark_count_rate;
  return nullptr;
}

std::string unknown_key(const char* what, const char* key) {
  return std::string("unknown ") + what + " key '" + key + "'";
}

}  // namespace

extern "C" {

const char* flqkd_version(void) { return "0.1.0"; }

const char* flqkd_last_error(void) { return last_error.c_str(); }

const char* flqkd_status_name(flqkd_status status) {
  switch (status) {
    case FLQKD_OK: return "ok";
    case FLQKD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FLQKD_ERR_VALIDATION: return "validation error";
    case FLQKD_ERR_DOMAIN: return "domain error";
    case FLQKD_ERR_UNPHYSICAL: return "unphysical state";
    case FLQKD_ERR_ESTIMATOR_UNDEFINED: return "estimator undefined";
    case FLQKD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

flqkd_status flqkd_params_create(flqkd_params** out) {
  FLQKD_REQUIRE(out);
  return guarded([&] { *out = new flqkd_params{}; });
}

void flqkd_params_destroy(flqkd_params* params) { delete params; }

flqkd_status flqkd_params_set(flqkd_params* params, const char* key, double value) {
  FLQKD_REQUIRE(params);
  FLQKD_REQUIRE(key);
  double* field = params_field(params->value, key);
  if (field == nullptr) return record(FLQKD_ERR_INVALID_ARGUMENT, unknown_key("parameter", key).c_str());
  *field = value;
  last_error.clear();
  return FLQKD_OK;
}

flqkd_status flqkd_params_get(const flqkd_params* params, const char* key, double* value) {
  FLQKD_REQUIRE(params);
  FLQKD_REQUIRE(key);
  FLQKD_REQUIRE(value);
  const double* field = params_field(const_cast<flqkd::SystemParams&>(params->value), key);
  if (field == nullptr) return record(FLQKD_ERR_INVALID_ARGUMENT, unknown_key("parameter", key).c_str());
  *value = *field;
  last_error.clear();
  return FLQKD_OK;
}

flqkd_status flqkd_params_validate(const flqkd_params* params) {
  FLQKD_REQUIRE(params);
  return guarded([&] { params->value.validate(); });
}

flqkd_status flqkd_symplectic_eigenvalues(const double cov[36], double out[3]) {
  FLQKD_REQUIRE(cov);
  FLQKD_REQUIRE(out);
  return guarded([&] {
    const auto spectrum = flqkd::symplectic_eigenvalues(flqkd::Covariance3Mode(load(cov)));
    std::memcpy(out, spectrum.eigenvalues.data(), 3 * sizeof(double));
  });
}

flqkd_status flqkd_von_neumann_entropy(const double cov[36], double* bits) {
  FLQKD_REQUIRE(cov);
  FLQKD_REQUIRE(bits);
  return guarded([&] { *bits = flqkd::von_neumann_entropy(flqkd::Covariance3Mode(load(cov))); });
}

flqkd_status flqkd_thermal_entropy(double mean_photons, double* bits) {
  FLQKD_REQUIRE(bits);
  return guarded([&] { *bits = flqkd::thermal_entropy(mean_photons); });
}

flqkd_status flqkd_eve_injection_brightness(double f_e, double n_s, double kappa, double* n_e) {
  FLQKD_REQUIRE(n_e);
  return guarded([&] { *n_e = flqkd::eve_injection_brightness(f_e, n_s, kappa); });
}

flqkd_status flqkd_conditional_covariance(const flqkd_params* params, int bit, double n_s,
                                          double f_e, double out[36]) {
  FLQKD_REQUIRE(params);
  FLQKD_REQUIRE(out);
  if (bit != 0 && bit != 1) return record(FLQKD_ERR_INVALID_ARGUMENT, "bit must be 0 or 1");
  return guarded([&] {
    const auto b = bit == 0 ? flqkd::BobBit::Zero : flqkd::BobBit::One;
    store(flqkd::conditional_covariance(b, params->value, n_s, f_e), out);
  });
}

flqkd_status flqkd_unconditional_covariance(const flqkd_params* params, double n_s, double f_e,
                                            double out[36]) {
  FLQKD_REQUIRE(params);
  FLQKD_REQUIRE(out);
  return guarded([&] { store(flqkd::unconditional_covariance(params->value, n_s, f_e), out); });
}

flqkd_status flqkd_holevo_bound(const flqkd_params* params, double n_s, double f_e, double* bits) {
  FLQKD_REQUIRE(params);
  FLQKD_REQUIRE(bits);
  return guarded([&] { *bits = flqkd::holevo_bound(params->value, n_s, f_e); });
}

flqkd_status flqkd_chernoff_ber_passive(const flqkd_params* params, double n_s, double* ber) {
  FLQKD_REQUIRE(params);
  FLQKD_REQUIRE(ber);
  return guarded([&] { *ber = flqkd::chernoff_ber_passive(params->value, n_s); });
}

flqkd_status flqkd_q_function(double x, double* q) {
  FLQKD_REQUIRE(q);
  return guarded([&] { *q = flqkd::q_function(x); });
}

flqkd_status flqkd_alice_ber(const flqkd_params* params, double n_s, double* ber) {
  FLQKD_REQUIRE(params);
  FLQKD_REQUIRE(ber);
  return guarded([&] { *ber = flqkd::alice_ber(n_s, params->value); });
}

flqkd_status flqkd_shannon_info(double ber, double* bits) {
  FLQKD_REQUIRE(bits);
  return guarded([&] { *bits = flqkd::shannon_info(ber); });
}

flqkd_status flqkd_skr_lower_bound(const flqkd_params* params, double n_s, double f_e,
                                   flqkd_rate_point* out) {
  FLQKD_REQUIRE(params);
  FLQKD_REQUIRE(out);
  return guarded([&] { *out = to_c(flqkd::skr_lower_bound(n_s, f_e, params->value)); });
}

flqkd_status flqkd_optimize_brightness(const flqkd_params* params, double f_e, double n_s_lo,
                                       double n_s_hi, double rel_tolerance, flqkd_optimum* out) {
  FLQKD_REQUIRE(params);
  FLQKD_REQUIRE(out);
  return guarded([&] {
    const auto opt =
        flqkd::optimize_brightness(f_e, params->value, {n_s_lo, n_s_hi}, rel_tolerance);
    *out = flqkd_optimum{to_c(opt.point), opt.positive_key ? 1 : 0};
  });
}

flqkd_status flqkd_pirandola_limit(double kappa, double* bits_per_mode) {
  FLQKD_REQUIRE(bits_per_mode);
  return guarded([&] { *bits_per_mode = flqkd::pirandola_limit(kappa); });
}

flqkd_status flqkd_advantage_db(double ske, double limit, double* db) {
  FLQKD_REQUIRE(db);
  return guarded([&] { *db = flqkd::advantage_db(ske, limit); });
}

flqkd_status flqkd_brightness_from_power(double power_w, double photon_energy_j,
                                         double bandwidth_hz, double* n_s) {
  FLQKD_REQUIRE(n_s);
  return guarded([&] { *n_s = flqkd::brightness_from_power(power_w, photon_energy_j, bandwidth_hz); });
}

flqkd_status flqkd_f_e_upper_bound(double f_e_hat, double sigma, int n_sigma, double* f_e_ub) {
  FLQKD_REQUIRE(f_e_ub);
  return guarded([&] { *f_e_ub = flqkd::f_e_upper_bound({f_e_hat, sigma, n_sigma}); });
}

flqkd_status flqkd_monitor_config_create(flqkd_monitor_config** out) {
  FLQKD_REQUIRE(out);
  return guarded([&] { *out = new flqkd_monitor_config{}; });
}

void flqkd_monitor_config_destroy(flqkd_monitor_config* config) { delete config; }

flqkd_status flqkd_monitor_config_set(flqkd_monitor_config* config, const char* key, double value) {
  FLQKD_REQUIRE(config);
  FLQKD_REQUIRE(key);
  double* field = monitor_field(config->value, key);
  if (field == nullptr) return record(FLQKD_ERR_INVALID_ARGUMENT, unknown_key("monitor", key).c_str());
  *field = value;
  last_error.clear();
  return FLQKD_OK;
}

flqkd_status flqkd_monitor_config_get(const flqkd_monitor_config* config, const char* key,
                                      double* value) {
  FLQKD_REQUIRE(config);
  FLQKD_REQUIRE(key);
  FLQKD_REQUIRE(value);
  const double* field = monitor_field(const_cast<flqkd::MonitorSimConfig&>(config->value), key);
  if (field == nullptr) return record(FLQKD_ERR_INVALID_ARGUMENT, unknown_key("monitor", key).c_str());
  *value = *field;
  last_error.clear();
  return FLQKD_OK;
}

flqkd_status flqkd_monitor_config_set_seed(flqkd_monitor_config* config, uint64_t seed) {
  FLQKD_REQUIRE(config);
  config->value.rng_seed = seed;
  return FLQKD_OK;
}

flqkd_status flqkd_monitor_config_get_seed(const flqkd_monitor_config* config, uint64_t* seed) {
  FLQKD_REQUIRE(config);
  FLQKD_REQUIRE(seed);
  *seed = config->value.rng_seed;
  return FLQKD_OK;
}

flqkd_status flqkd_monitor_config_validate(const flqkd_monitor_config* config) {
  FLQKD_REQUIRE(config);
  return guarded([&] { config->value.validate(); });
}

flqkd_status flqkd_estimate_fe(const flqkd_monitor_counts* counts, double* f_e, double* std_error) {
  FLQKD_REQUIRE(counts);
  FLQKD_REQUIRE(f_e);
  return guarded([&] {
    flqkd::MonitorCounts c;
    c.s_a = counts->s_a;
    c.c_ia = counts->c_ia;
    c.c_ia_shift = counts->c_ia_shift;
    c.s_b = counts->s_b;
    c.c_ib = counts->c_ib;
    c.c_ib_shift = counts->c_ib_shift;
    c.duration = counts->duration;
    const auto estimate = flqkd::estimate_fe(c);
    *f_e = estimate.value;
    if (std_error != nullptr) *std_error = estimate.std_error;
  });
}

flqkd_status flqkd_simulate_monitor(const flqkd_monitor_config* config, flqkd_monitor_counts* out) {
  FLQKD_REQUIRE(config);
  FLQKD_REQUIRE(out);
  return guarded([&] {
    const auto c = flqkd::simulate_monitor(config->value);
    *out = flqkd_monitor_counts{c.s_a, c.c_ia, c.c_ia_shift, c.s_b,
                                c.c_ib, c.c_ib_shift, c.duration, c.warnings};
  });
}

flqkd_status flqkd_sweep_injection(const flqkd_monitor_config* config, const double* f_e_values,
                                   size_t n_values, int trials, flqkd_sweep_row* out) {
  FLQKD_REQUIRE(config);
  if (n_values > 0) {
    FLQKD_REQUIRE(f_e_values);
    FLQKD_REQUIRE(out);
  }
  return guarded([&] {
    const auto rows =
        flqkd::sweep_injection(config->value, std::span<const double>(f_e_values, n_values), trials);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out[i] = flqkd_sweep_row{rows[i].f_e_true, rows[i].mean_estimate, rows[i].std_dev,
                               rows[i].trials, rows[i].warnings};
    }
  });
}

}  // extern "C"

static_assert(FLQKD_WARN_SATURATION_ALICE == flqkd::kSaturationAlice);
static_assert(FLQKD_WARN_SATURATION_BOB == flqkd::kSaturationBob);
static_assert(FLQKD_WARN_SATURATION_IDLER == flqkd::kSaturationIdler);

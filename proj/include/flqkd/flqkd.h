/*
 * flqkd: C interface to the floodlight-QKD security and rate model.
 *
 * Every function returns an flqkd_status. On failure a human-readable message
 * for the calling thread is available from flqkd_last_error(). Handles are
 * opaque; each *_create has a matching *_destroy that accepts NULL.
 *
 * Covariance matrices are passed as 36 doubles in row-major order with the
 * quadrature layout (x1, p1, x2, p2, x3, p3) and vacuum variance 1/4.
 */
#ifndef FLQKD_FLQKD_H
#define FLQKD_FLQKD_H

#include <stddef.h>
#include <stdint.h>

#if defined(FLQKD_BUILDING_LIBRARY)
#define FLQKD_API __attribute__((visibility("default")))
#else
#define FLQKD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum flqkd_status {
  FLQKD_OK = 0,
  FLQKD_ERR_INVALID_ARGUMENT = 1, /* null pointer, unknown key */
  FLQKD_ERR_VALIDATION = 2,       /* malformed matrix or parameter set */
  FLQKD_ERR_DOMAIN = 3,           /* argument outside an operation's domain */
  FLQKD_ERR_UNPHYSICAL = 4,       /* covariance below the vacuum floor */
  FLQKD_ERR_ESTIMATOR_UNDEFINED = 5,
  FLQKD_ERR_INTERNAL = 6
} flqkd_status;

typedef struct flqkd_params flqkd_params;
typedef struct flqkd_monitor_config flqkd_monitor_config;

typedef struct flqkd_rate_point {
  double n_s;
  double ppb;
  double ber;
  double i_ab;
  double chi_ub;
  double ske;
  double skr;
} flqkd_rate_point;

typedef struct flqkd_optimum {
  flqkd_rate_point point;
  int positive_key;
} flqkd_optimum;

typedef struct flqkd_monitor_counts {
  double s_a;
  double c_ia;
  double c_ia_shift;
  double s_b;
  double c_ib;
  double c_ib_shift;
  double duration;
  uint32_t warnings; /* FLQKD_WARN_* bits */
} flqkd_monitor_counts;

#define FLQKD_WARN_SATURATION_ALICE 0x1u
#define FLQKD_WARN_SATURATION_BOB 0x2u
#define FLQKD_WARN_SATURATION_IDLER 0x4u

typedef struct flqkd_sweep_row {
  double f_e_true;
  double mean_estimate;
  double std_dev;
  int trials;
  uint32_t warnings;
} flqkd_sweep_row;

FLQKD_API const char* flqkd_version(void);
FLQKD_API const char* flqkd_last_error(void);
FLQKD_API const char* flqkd_status_name(flqkd_status status);

/* System parameters. Keys: bandwidth_hz, modulation_rate, modes_per_bit,
 * kappa, eta, kappa_b, gain_b, ase_brightness_b, beta, photon_energy_j. */
FLQKD_API flqkd_status flqkd_params_create(flqkd_params** out);
FLQKD_API void flqkd_params_destroy(flqkd_params* params);
FLQKD_API flqkd_status flqkd_params_set(flqkd_params* params, const char* key, double value);
FLQKD_API flqkd_status flqkd_params_get(const flqkd_params* params, const char* key, double* value);
FLQKD_API flqkd_status flqkd_params_validate(const flqkd_params* params);

/* Gaussian states. */
FLQKD_API flqkd_status flqkd_symplectic_eigenvalues(const double cov[36], double out[3]);
FLQKD_API flqkd_status flqkd_von_neumann_entropy(const double cov[36], double* bits);
FLQKD_API flqkd_status flqkd_thermal_entropy(double mean_photons, double* bits);

/* Eve's attack model. bit is 0 or 1. */
FLQKD_API flqkd_status flqkd_eve_injection_brightness(double f_e, double n_s, double kappa,
                                                     double* n_e);
FLQKD_API flqkd_status flqkd_conditional_covariance(const flqkd_params* params, int bit, double n_s,
                                                   double f_e, double out[36]);
FLQKD_API flqkd_status flqkd_unconditional_covariance(const flqkd_params* params, double n_s,
                                                     double f_e, double out[36]);
FLQKD_API flqkd_status flqkd_holevo_bound(const flqkd_params* params, double n_s, double f_e,
                                         double* bits);
FLQKD_API flqkd_status flqkd_chernoff_ber_passive(const flqkd_params* params, double n_s,
                                                 double* ber);

/* Rate model. */
FLQKD_API flqkd_status flqkd_q_function(double x, double* q);
FLQKD_API flqkd_status flqkd_alice_ber(const flqkd_params* params, double n_s, double* ber);
FLQKD_API flqkd_status flqkd_shannon_info(double ber, double* bits);
FLQKD_API flqkd_status flqkd_skr_lower_bound(const flqkd_params* params, double n_s, double f_e,
                                            flqkd_rate_point* out);
FLQKD_API flqkd_status flqkd_optimize_brightness(const flqkd_params* params, double f_e,
                                                double n_s_lo, double n_s_hi, double rel_tolerance,
                                                flqkd_optimum* out);
FLQKD_API flqkd_status flqkd_pirandola_limit(double kappa, double* bits_per_mode);
FLQKD_API flqkd_status flqkd_advantage_db(double ske, double limit, double* db);
FLQKD_API flqkd_status flqkd_brightness_from_power(double power_w, double photon_energy_j,
                                                  double bandwidth_hz, double* n_s);
FLQKD_API flqkd_status flqkd_f_e_upper_bound(double f_e_hat, double sigma, int n_sigma,
                                            double* f_e_ub);

/* Channel monitor. Config keys: pair_rate, ase_rate_at_source, kappa,
 * f_e_true, tap_alice, tap_bob, det_eff_idler, det_eff_alice, det_eff_bob,
 * dead_time, coinc_window, shift_offset, duration, dark_count_rate.
 * The seed has its own accessors. */
FLQKD_API flqkd_status flqkd_monitor_config_create(flqkd_monitor_config** out);
FLQKD_API void flqkd_monitor_config_destroy(flqkd_monitor_config* config);
FLQKD_API flqkd_status flqkd_monitor_config_set(flqkd_monitor_config* config, const char* key,
                                               double value);
FLQKD_API flqkd_status flqkd_monitor_config_get(const flqkd_monitor_config* config, const char* key,
                                               double* value);
FLQKD_API flqkd_status flqkd_monitor_config_set_seed(flqkd_monitor_config* config, uint64_t seed);
FLQKD_API flqkd_status flqkd_monitor_config_get_seed(const flqkd_monitor_config* config,
                                                    uint64_t* seed);
FLQKD_API flqkd_status flqkd_monitor_config_validate(const flqkd_monitor_config* config);

FLQKD_API flqkd_status flqkd_estimate_fe(const flqkd_monitor_counts* counts, double* f_e,
                                        double* std_error);
FLQKD_API flqkd_status flqkd_simulate_monitor(const flqkd_monitor_config* config,
                                             flqkd_monitor_counts* out);
/* out must hold n_values rows. */
FLQKD_API flqkd_status flqkd_sweep_injection(const flqkd_monitor_config* config,
                                            const double* f_e_values, size_t n_values, int trials,
                                            flqkd_sweep_row* out);

#ifdef __cplusplus
}
#endif

#endif /* FLQKD_FLQKD_H */

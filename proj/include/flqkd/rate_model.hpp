#pragma once

// Alice's homodyne BER, Shannon information, the secret-key-rate lower bound
// and its optimisation over source brightness.

#include <utility>

#include "flqkd/params.hpp"

namespace flqkd {

struct RatePoint {
  double n_s = 0.0;     // photons per mode
  double ppb = 0.0;     // photons per bit, M * N_S
  double ber = 0.5;
  double i_ab = 0.0;    // bits per use
  double chi_ub = 0.0;  // bits per use
  double ske = 0.0;     // beta * i_ab - chi_ub, may be negative
  double skr = 0.0;     // bits per second
};

/// Measured injection fraction with its uncertainty.
struct ConfidenceSpec {
  double f_e_hat = 0.0;
  double sigma = 0.0;
  int n_sigma = 1;
};

/// Q(sqrt(2 M kappa eta (1 - kappa_B) N_S / gamma)).
double alice_ber(double n_s, const SystemParams& params);

/// 1 - h2(ber).
double shannon_info(double ber);

RatePoint skr_lower_bound(double n_s, double f_e, const SystemParams& params);

struct BrightnessRange {
  double lo = 1e-5;
  double hi = 1.0;
};

struct Optimum {
  double n_s = 0.0;
  RatePoint point;
  bool positive_key = false;
};

/// Maximises the SKR over N_S: 64-point log grid, then golden-section search
/// in log N_S around the best grid point.
Optimum optimize_brightness(double f_e, const SystemParams& params,
                            BrightnessRange range = {}, double rel_tolerance = 1e-6);

/// -log2(1 - kappa): one-way single-mode ceiling, bits per mode.
double pirandola_limit(double kappa);

/// 10 log10(ske / limit).
double advantage_db(double ske, double limit);

/// P / (hbar omega0 W).
double brightness_from_power(double power_w, double photon_energy_j, double bandwidth_hz);

/// f_hat + n sigma, clamped into [0, 1).
double f_e_upper_bound(const ConfidenceSpec& spec);

}  // namespace flqkd

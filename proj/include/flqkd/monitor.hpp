#pragma once

// Calibration-free estimate of Eve's injection fraction from coincidence
// monitors at Alice's and Bob's taps, and a seeded Monte Carlo simulator of
// the SPDC + ASE tap architecture that produces the counts.

#include <cstdint>
#include <span>
#include <vector>

namespace flqkd {

/// Rates in counts/s over `duration` seconds.
struct MonitorCounts {
  double s_a = 0.0;
  double c_ia = 0.0;
  double c_ia_shift = 0.0;
  double s_b = 0.0;
  double c_ib = 0.0;
  double c_ib_shift = 0.0;
  double duration = 0.0;
  std::uint32_t warnings = 0;  // SaturationWarning bits

  void validate() const;
};

enum SaturationWarning : std::uint32_t {
  kSaturationAlice = 1u << 0,
  kSaturationBob = 1u << 1,
  kSaturationIdler = 1u << 2,
};

struct FeEstimate {
  double value = 0.0;
  double std_error = 0.0;  // delta-method Poisson propagation
};

/// 1 - [(C_IB - C~_IB)/S_B] / [(C_IA - C~_IA)/S_A]. Throws EstimatorUndefined
/// when Alice's excess coincidence rate is not positive. Negative estimates
/// are returned unchanged.
FeEstimate estimate_fe(const MonitorCounts& counts);

struct MonitorSimConfig {
  double pair_rate = 1e6;             // SPDC pairs/s
  double ase_rate_at_source = 9e6;    // ASE photons/s entering the combiner
  double kappa = 0.1;                 // Alice-to-Bob transmissivity
  double f_e_true = 0.0;              // Eve's share of the flux entering Bob
  double tap_alice = 1e-3;
  double tap_bob = 1e-3;
  double det_eff_idler = 0.8;
  double det_eff_alice = 0.8;
  double det_eff_bob = 0.8;
  double dead_time = 50e-9;           // non-paralyzable, s
  double coinc_window = 1e-9;         // s
  double shift_offset = 100e-9;       // s
  double duration = 500.0;            // s
  double dark_count_rate = 0.0;       // uncorrelated counts/s at every detector
  std::uint64_t rng_seed = 0x5EED'F100'D116'4700ULL;

  void validate() const;
};

/// Analytic mean rates for a configuration (dead time in the stationary
/// non-paralyzable approximation). Used to size runs and sanity-check the
/// simulator.
struct MonitorExpectation {
  MonitorCounts rates;
  double excess_a = 0.0;  // expected C_IA - C~_IA, counts/s
  double excess_b = 0.0;
};

MonitorExpectation expected_monitor_rates(const MonitorSimConfig& config);

/// Deterministic in config.rng_seed.
MonitorCounts simulate_monitor(const MonitorSimConfig& config);

struct SweepRow {
  double f_e_true = 0.0;
  double mean_estimate = 0.0;
  double std_dev = 0.0;  // sample standard deviation over trials
  int trials = 0;
  std::uint32_t warnings = 0;  // union over trials
};

/// Runs `trials` independent simulations per f_E value; seeds are derived
/// from base.rng_seed, the value's index and the trial index. Trials run
/// concurrently; rows come back in input order.
std::vector<SweepRow> sweep_injection(const MonitorSimConfig& base,
                                      std::span<const double> f_e_values, int trials);

/// Seed of trial `trial` at sweep point `point`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t point, std::uint64_t trial);

}  // namespace flqkd

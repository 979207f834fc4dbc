#pragma once

namespace flqkd {

/// Link budget shared by every rate computation. Defaults are the
/// 10 dB-loss, 100 Mbit/s operating point.
struct SystemParams {
  double bandwidth_hz = 2.2e12;         // W
  double modulation_rate = 1.0e8;       // R, bit/s
  double modes_per_bit = 2.0e4;         // M
  double kappa = 0.1;                   // one-way transmissivity
  double eta = 0.9;                     // receiver imperfection factor
  double kappa_b = 0.71;                // Bob's loss ahead of the amplifier
  double gain_b = 3.8e3;                // G_B
  double ase_brightness_b = 9.7e3;      // N_B, photons/(s Hz)
  double beta = 0.94;                   // reconciliation efficiency
  double photon_energy_j = 1.28e-19;    // hbar * omega0

  /// N_B / G_B; the amplifier noise figure is 10 log10(gamma) + 3 dB.
  double gamma() const { return ase_brightness_b / gain_b; }

  /// Throws Validation naming the first out-of-range field.
  void validate() const;
};

}  // namespace flqkd

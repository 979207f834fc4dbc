#include "flqkd/rate_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "flqkd/errors.hpp"
#include "flqkd/eve_model.hpp"
#include "flqkd/special.hpp"

namespace flqkd {

double alice_ber(double n_s, const SystemParams& params) {
  params.validate();
  if (!(n_s >= 0.0) || !std::isfinite(n_s)) fail(ErrorKind::Domain, "alice_ber: N_S must be >= 0");
  const double snr = 2.0 * params.modes_per_bit * params.kappa * params.eta *
                     (1.0 - params.kappa_b) * n_s / params.gamma();
  return q_function(std::sqrt(snr));
}

double shannon_info(double ber) {
  if (!(ber >= 0.0 && ber <= 1.0)) fail(ErrorKind::Domain, "shannon_info: BER must lie in [0, 1]");
  return 1.0 - binary_entropy(ber);
}

RatePoint skr_lower_bound(double n_s, double f_e, const SystemParams& params) {
  RatePoint p;
  p.n_s = n_s;
  p.ppb = params.modes_per_bit * n_s;
  p.ber = alice_ber(n_s, params);
  p.i_ab = shannon_info(p.ber);
  p.chi_ub = holevo_bound(params, n_s, f_e);
  p.ske = params.beta * p.i_ab - p.chi_ub;
  p.skr = p.ske * params.modulation_rate;
  return p;
}

Optimum optimize_brightness(double f_e, const SystemParams& params, BrightnessRange range,
                            double rel_tolerance) {
  if (!(range.lo >= 0.0 && range.lo < range.hi) || !std::isfinite(range.hi)) {
    fail(ErrorKind::Domain, "optimize_brightness: need 0 <= lo < hi");
  }
  if (!(rel_tolerance > 0.0)) fail(ErrorKind::Domain, "optimize_brightness: tolerance must be > 0");

  // The search runs in log N_S; a zero lower bound is lifted to a tiny positive value.
  const double lo = std::max(range.lo, range.hi * 1e-12);
  const double log_lo = std::log(lo);
  const double log_hi = std::log(range.hi);

  constexpr int kGrid = 64;
  std::array<double, kGrid> grid{};
  int best = 0;
  double best_skr = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    grid[i] = log_lo + (log_hi - log_lo) * i / (kGrid - 1);
    const double skr = skr_lower_bound(std::exp(grid[i]), f_e, params).skr;
    if (skr > best_skr) {
      best_skr = skr;
      best = i;
    }
  }

  double a = grid[std::max(best - 1, 0)];
  double b = grid[std::min(best + 1, kGrid - 1)];
  auto objective = [&](double log_ns) { return skr_lower_bound(std::exp(log_ns), f_e, params).skr; };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  // Width in log space approximates the relative width in N_S.
  while (b - a > rel_tolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }

  double log_opt = 0.5 * (a + b);
  RatePoint point = skr_lower_bound(std::exp(log_opt), f_e, params);
  if (best_skr > point.skr) {
    // Refinement can only stay at or above the seeding grid point.
    log_opt = grid[best];
    point = skr_lower_bound(std::exp(log_opt), f_e, params);
  }
  return Optimum{point.n_s, point, point.skr > 0.0};
}

double pirandola_limit(double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) fail(ErrorKind::Domain, "pirandola_limit: kappa must lie in (0, 1)");
  return -std::log2(1.0 - kappa);
}

double advantage_db(double ske, double limit) {
  if (!(ske > 0.0) || !(limit > 0.0)) {
    fail(ErrorKind::Domain, "advantage_db: SKE and limit must both be positive");
  }
  return 10.0 * std::log10(ske / limit);
}

double brightness_from_power(double power_w, double photon_energy_j, double bandwidth_hz) {
  if (!(power_w > 0.0) || !(photon_energy_j > 0.0) || !(bandwidth_hz > 0.0)) {
    fail(ErrorKind::Domain, "brightness_from_power: all inputs must be positive");
  }
  return power_w / (photon_energy_j * bandwidth_hz);
}

double f_e_upper_bound(const ConfidenceSpec& spec) {
  if (!(spec.sigma >= 0.0)) fail(ErrorKind::Domain, "f_e_upper_bound: sigma must be >= 0");
  if (spec.n_sigma < 1) fail(ErrorKind::Domain, "f_e_upper_bound: n_sigma must be >= 1");
  const double ub = spec.f_e_hat + spec.n_sigma * spec.sigma;
  return std::clamp(ub, 0.0, std::nextafter(1.0, 0.0));
}

}  // namespace flqkd

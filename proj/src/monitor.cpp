#include "flqkd/monitor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "flqkd/errors.hpp"

namespace flqkd {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::Validation, what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Photon fluxes (per second) arriving at each detector, split into the
// class that has an SPDC idler partner and everything else.
struct DetectorFluxes {
  double alice_signal = 0.0;
  double alice_background = 0.0;
  double bob_signal = 0.0;
  double bob_background = 0.0;
  double idler = 0.0;
};

DetectorFluxes detector_fluxes(const MonitorSimConfig& c) {
  const double source = c.pair_rate + c.ase_rate_at_source;
  // Eve holds Bob's received flux at its unattacked value and supplies a
  // share f_E of it with light uncorrelated to Alice's.
  const double into_bob = c.kappa * (1.0 - c.tap_alice) * source;
  const double alice_share = 1.0 - c.f_e_true;
  const double bob_gain = c.tap_bob * c.det_eff_bob;

  DetectorFluxes f;
  f.alice_signal = c.pair_rate * c.tap_alice * c.det_eff_alice;
  f.alice_background = c.ase_rate_at_source * c.tap_alice * c.det_eff_alice + c.dark_count_rate;
  f.bob_signal = alice_share * c.kappa * (1.0 - c.tap_alice) * c.pair_rate * bob_gain;
  f.bob_background = (into_bob * bob_gain - f.bob_signal) + c.dark_count_rate;
  f.idler = c.pair_rate * c.det_eff_idler + c.dark_count_rate;
  return f;
}

double dead_time_throughput(double raw_rate, double dead_time) {
  return raw_rate / (1.0 + raw_rate * dead_time);
}

struct TapTally {
  std::uint64_t singles = 0;
  std::uint64_t aligned = 0;
  std::uint64_t shifted = 0;
};

// One tap detector plus its coincidences with the idler detector.
//
// The tap detector is simulated as a full event stream. The idler detector
// runs at ~1e6 counts/s, so instead of simulating it end to end its arrivals
// are drawn only inside a neighbourhood of each tap detection that spans both
// coincidence windows plus `history` seconds for the dead-time state to
// settle. The idler process around a tap event is the stationary background
// plus, for signal-class events, the partner idler at the same instant.
class TapSimulator {
 public:
  TapSimulator(const MonitorSimConfig& c, double idler_rate)
      : c_(c),
        half_window_(0.5 * c.coinc_window),
        history_(std::max(20.0 * c.dead_time, c.coinc_window)),
        span_(c.shift_offset + c.coinc_window + history_),
        idler_count_(idler_rate * span_) {}

  TapTally run(double signal_rate, double background_rate, std::uint64_t tap_seed,
               std::uint64_t idler_seed) {
    TapTally tally;
    const double total = signal_rate + background_rate;
    if (!(total > 0.0)) return tally;

    std::mt19937_64 tap_rng(tap_seed);
    std::mt19937_64 idler_rng(idler_seed);
    std::exponential_distribution<double> gap(total);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double t = 0.0;
    double last = -std::numeric_limits<double>::infinity();
    for (;;) {
      t += gap(tap_rng);
      if (t >= c_.duration) break;
      const bool is_signal = unit(tap_rng) * total < signal_rate;
      if (t - last < c_.dead_time) continue;
      last = t;
      ++tally.singles;
      count_idlers(t, is_signal, idler_rng, unit, tally);
    }
    return tally;
  }

 private:
  void count_idlers(double t, bool partner, std::mt19937_64& rng,
                    std::uniform_real_distribution<double>& unit, TapTally& tally) {
    arrivals_.clear();
    const double start = t - c_.shift_offset - half_window_ - history_;
    const int n = idler_count_.mean() > 0.0 ? idler_count_(rng) : 0;
    for (int i = 0; i < n; ++i) arrivals_.push_back(start + span_ * unit(rng));
    if (partner && unit(rng) < c_.det_eff_idler) arrivals_.push_back(t);
    if (arrivals_.empty()) return;
    std::sort(arrivals_.begin(), arrivals_.end());

    const double shifted_centre = t - c_.shift_offset;
    double last = -std::numeric_limits<double>::infinity();
    for (double a : arrivals_) {
      if (a - last < c_.dead_time) continue;
      last = a;
      if (a >= t - half_window_ && a < t + half_window_) {
        ++tally.aligned;
      } else if (a >= shifted_centre - half_window_ && a < shifted_centre + half_window_) {
        ++tally.shifted;
      }
    }
  }

  const MonitorSimConfig& c_;
  double half_window_;
  double history_;
  double span_;
  std::poisson_distribution<int> idler_count_;
  std::vector<double> arrivals_;
};

std::uint32_t saturation_flags(const MonitorSimConfig& c, const DetectorFluxes& f) {
  if (c.dead_time <= 0.0) return 0;
  const double limit = 0.9 / c.dead_time;
  std::uint32_t flags = 0;
  if (f.alice_signal + f.alice_background > limit) flags |= kSaturationAlice;
  if (f.bob_signal + f.bob_background > limit) flags |= kSaturationBob;
  if (f.idler > limit) flags |= kSaturationIdler;
  return flags;
}

}  // namespace

void MonitorCounts::validate() const {
  require(std::isfinite(duration) && duration > 0.0, "monitor counts: duration must be > 0");
  for (double r : {s_a, c_ia, c_ia_shift, s_b, c_ib, c_ib_shift}) {
    require(finite_nonneg(r), "monitor counts: rates must be finite and >= 0");
  }
  require(c_ia <= s_a && c_ia_shift <= s_a, "monitor counts: Alice coincidences exceed her singles");
  require(c_ib <= s_b && c_ib_shift <= s_b, "monitor counts: Bob coincidences exceed his singles");
}

FeEstimate estimate_fe(const MonitorCounts& counts) {
  counts.validate();
  const double xa = counts.c_ia - counts.c_ia_shift;
  const double xb = counts.c_ib - counts.c_ib_shift;
  if (!(xa > 0.0) || !(counts.s_a > 0.0)) {
    fail(ErrorKind::EstimatorUndefined,
         "f_E estimator undefined: Alice's tap shows no excess coincidences");
  }
  if (!(counts.s_b > 0.0)) {
    fail(ErrorKind::EstimatorUndefined, "f_E estimator undefined: Bob's tap recorded no singles");
  }
  const double sa = counts.s_a;
  const double sb = counts.s_b;
  const double ratio = (xb / sb) / (xa / sa);

  // First-order propagation with Var(rate) = rate / duration. Each excess is a
  // difference of two independent rates.
  const double T = counts.duration;
  const double d_xb = sa / (sb * xa);
  const double d_sb = -xb * sa / (sb * sb * xa);
  const double d_xa = -xb * sa / (sb * xa * xa);
  const double d_sa = xb / (sb * xa);
  const double var = (d_xb * d_xb * (counts.c_ib + counts.c_ib_shift) + d_sb * d_sb * sb +
                      d_xa * d_xa * (counts.c_ia + counts.c_ia_shift) + d_sa * d_sa * sa) /
                     T;
  return FeEstimate{1.0 - ratio, std::sqrt(var)};
}

void MonitorSimConfig::validate() const {
  require(finite_nonneg(pair_rate), "pair_rate must be >= 0");
  require(finite_nonneg(ase_rate_at_source), "ase_rate_at_source must be >= 0");
  require(kappa > 0.0 && kappa <= 1.0, "kappa must lie in (0, 1]");
  require(f_e_true >= 0.0 && f_e_true <= 1.0, "f_e_true must lie in [0, 1]");
  require(tap_alice > 0.0 && tap_alice <= 1e-3, "tap_alice must lie in (0, 0.001]");
  require(tap_bob > 0.0 && tap_bob <= 1e-3, "tap_bob must lie in (0, 0.001]");
  for (double e : {det_eff_idler, det_eff_alice, det_eff_bob}) {
    require(e > 0.0 && e <= 1.0, "detector efficiencies must lie in (0, 1]");
  }
  require(finite_nonneg(dead_time), "dead_time must be >= 0");
  require(std::isfinite(coinc_window) && coinc_window > 0.0, "coinc_window must be > 0");
  require(std::isfinite(shift_offset) && shift_offset >= 100.0 * coinc_window * (1.0 - 1e-12),
          "shift_offset must be >= 100 coinc_window");
  require(std::isfinite(duration) && duration > 0.0, "duration must be > 0");
  require(finite_nonneg(dark_count_rate), "dark_count_rate must be >= 0");
}

MonitorExpectation expected_monitor_rates(const MonitorSimConfig& c) {
  c.validate();
  const DetectorFluxes f = detector_fluxes(c);
  const double idler_live = 1.0 / (1.0 + f.idler * c.dead_time);
  const double idler_detected = dead_time_throughput(f.idler, c.dead_time);

  auto tap = [&](double signal, double background, double& singles, double& aligned,
                 double& shifted) {
    const double raw = signal + background;
    singles = dead_time_throughput(raw, c.dead_time);
    const double excess = raw > 0.0 ? singles * (signal / raw) * c.det_eff_idler * idler_live : 0.0;
    shifted = singles * idler_detected * c.coinc_window;
    aligned = excess + shifted;
    return excess;
  };

  MonitorExpectation e;
  e.rates.duration = c.duration;
  e.excess_a = tap(f.alice_signal, f.alice_background, e.rates.s_a, e.rates.c_ia, e.rates.c_ia_shift);
  e.excess_b = tap(f.bob_signal, f.bob_background, e.rates.s_b, e.rates.c_ib, e.rates.c_ib_shift);
  e.rates.warnings = saturation_flags(c, f);
  return e;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t point, std::uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(base) ^ point) ^ (trial * 0xD1B54A32D192ED03ULL));
}

MonitorCounts simulate_monitor(const MonitorSimConfig& c) {
  c.validate();
  const DetectorFluxes f = detector_fluxes(c);

  // Independent engines per stream, so tap singles never depend on idler draws.
  const std::uint64_t s = c.rng_seed;
  TapSimulator alice(c, f.idler);
  const TapTally a = alice.run(f.alice_signal, f.alice_background, derive_seed(s, 1, 0),
                               derive_seed(s, 1, 1));
  TapSimulator bob(c, f.idler);
  const TapTally b =
      bob.run(f.bob_signal, f.bob_background, derive_seed(s, 2, 0), derive_seed(s, 2, 1));

  const double T = c.duration;
  MonitorCounts out;
  out.duration = T;
  out.s_a = static_cast<double>(a.singles) / T;
  out.c_ia = static_cast<double>(a.aligned) / T;
  out.c_ia_shift = static_cast<double>(a.shifted) / T;
  out.s_b = static_cast<double>(b.singles) / T;
  out.c_ib = static_cast<double>(b.aligned) / T;
  out.c_ib_shift = static_cast<double>(b.shifted) / T;
  out.warnings = saturation_flags(c, f);
  return out;
}

std::vector<SweepRow> sweep_injection(const MonitorSimConfig& base,
                                      std::span<const double> f_e_values, int trials) {
  if (trials < 2) fail(ErrorKind::Domain, "sweep_injection: trials must be >= 2");
  base.validate();
  for (double fe : f_e_values) {
    if (!(fe >= 0.0 && fe <= 1.0)) fail(ErrorKind::Domain, "sweep_injection: f_E values must lie in [0, 1]");
  }

  const std::size_t points = f_e_values.size();
  const std::size_t jobs = points * static_cast<std::size_t>(trials);
  std::vector<double> estimates(jobs);
  std::vector<std::uint32_t> warnings(jobs, 0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const std::size_t point = job / static_cast<std::size_t>(trials);
      const std::size_t trial = job % static_cast<std::size_t>(trials);
      try {
        MonitorSimConfig cfg = base;
        cfg.f_e_true = f_e_values[point];
        cfg.rng_seed = derive_seed(base.rng_seed, point, trial);
        const MonitorCounts counts = simulate_monitor(cfg);
        estimates[job] = estimate_fe(counts).value;
        warnings[job] = counts.warnings;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  const std::size_t threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(jobs, 1));
  std::vector<std::jthread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);

  std::vector<SweepRow> rows(points);
  for (std::size_t p = 0; p < points; ++p) {
    const auto first = estimates.begin() + static_cast<std::ptrdiff_t>(p * trials);
    double mean = 0.0;
    for (int i = 0; i < trials; ++i) mean += first[i];
    mean /= trials;
    double ss = 0.0;
    for (int i = 0; i < trials; ++i) ss += (first[i] - mean) * (first[i] - mean);
    SweepRow& row = rows[p];
    row.f_e_true = f_e_values[p];
    row.mean_estimate = mean;
    row.std_dev = std::sqrt(ss / (trials - 1));
    row.trials = trials;
    for (int i = 0; i < trials; ++i) row.warnings |= warnings[p * trials + i];
  }
  return rows;
}

}  // namespace flqkd

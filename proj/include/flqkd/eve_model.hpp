#pragma once

// Eve's SPDC-injection collective attack: per-mode covariances of the light
// she holds, her Holevo-information upper bound, and the Chernoff bound on her
// error probability under a passive individual attack.

#include "flqkd/gaussian.hpp"
#include "flqkd/params.hpp"

namespace flqkd {

enum class BobBit : int { Zero = 0, One = 1 };

/// N_E = kappa N_S f_E / ((1 - kappa)(1 - f_E)). f_E must lie in [0, 1).
double eve_injection_brightness(double f_e, double n_s, double kappa);

/// Second moments entering the conditional covariance.
struct AttackMoments {
  double n_e = 0.0;   // Eve's SPDC signal brightness
  double n_ab = 0.0;  // light Eve taps from the Alice-to-Bob channel
  double n_ba = 0.0;  // Bob-to-Alice return light
  double c_ia = 0.0;  // tap / idler correlation
  double c_ab = 0.0;  // tap / return correlation, signed (negative when N_E > N_S)
  double c_ib = 0.0;  // idler / return correlation
};

AttackMoments attack_moments(const SystemParams& params, double n_s, double f_e);

/// Lambda^(k): Eve's per-mode covariance conditioned on Bob's bit k.
Covariance3Mode conditional_covariance(BobBit bit, const SystemParams& params, double n_s,
                                       double f_e);

/// Average of the two conditional covariances.
Covariance3Mode unconditional_covariance(const SystemParams& params, double n_s, double f_e);

struct AttackState {
  double f_e = 0.0;
  double n_s = 0.0;
  double n_e = 0.0;
  Covariance3Mode cov_k0 = Covariance3Mode::vacuum();
  Covariance3Mode cov_k1 = Covariance3Mode::vacuum();
  Covariance3Mode cov_uncond = Covariance3Mode::vacuum();
};

AttackState make_attack_state(const SystemParams& params, double n_s, double f_e);

/// M * (S[uncond] - (S[k=0] + S[k=1]) / 2) before any clamping.
double holevo_difference_unclamped(const SystemParams& params, double n_s, double f_e);

/// Upper bound on Eve's Holevo information, bits per channel use, clamped to [0, 1].
double holevo_bound(const SystemParams& params, double n_s, double f_e);

/// 1/2 exp(-4 M kappa (1 - kappa)(1 - kappa_B) N_S^2).
double chernoff_ber_passive(const SystemParams& params, double n_s);

}  // namespace flqkd

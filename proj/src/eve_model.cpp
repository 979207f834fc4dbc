#include "flqkd/eve_model.hpp"

#include <algorithm>
#include <cmath>

#include "flqkd/errors.hpp"

namespace flqkd {

namespace {

void check_inputs(const SystemParams& params, double n_s, double f_e) {
  params.validate();
  if (!(n_s >= 0.0) || !std::isfinite(n_s)) fail(ErrorKind::Domain, "N_S must be finite and >= 0");
  if (!(f_e >= 0.0 && f_e < 1.0)) fail(ErrorKind::Domain, "f_E must lie in [0, 1)");
}

}  // namespace

double eve_injection_brightness(double f_e, double n_s, double kappa) {
  if (!(f_e >= 0.0 && f_e < 1.0)) {
    fail(ErrorKind::Domain, "eve_injection_brightness: f_E must lie in [0, 1)");
  }
  if (!(n_s >= 0.0)) fail(ErrorKind::Domain, "eve_injection_brightness: N_S must be >= 0");
  if (!(kappa > 0.0 && kappa < 1.0)) {
    fail(ErrorKind::Domain, "eve_injection_brightness: kappa must lie in (0, 1)");
  }
  return kappa * n_s * f_e / ((1.0 - kappa) * (1.0 - f_e));
}

AttackMoments attack_moments(const SystemParams& params, double n_s, double f_e) {
  check_inputs(params, n_s, f_e);
  const double k = params.kappa;
  const double bob_gain = params.gain_b * (1.0 - params.kappa_b);

  AttackMoments m;
  m.n_e = eve_injection_brightness(f_e, n_s, k);
  m.n_ab = (1.0 - k) * n_s + k * m.n_e;
  m.c_ia = 2.0 * std::sqrt(k * m.n_e * (m.n_e + 1.0));
  m.c_ab = 2.0 * std::sqrt(bob_gain * k * (1.0 - k)) * (n_s - m.n_e);
  m.c_ib = 2.0 * std::sqrt(bob_gain * (1.0 - k) * m.n_e * (m.n_e + 1.0));
  m.n_ba = bob_gain * (k * n_s + (1.0 - k) * m.n_e) + params.ase_brightness_b;
  return m;
}

namespace {

// Layout (x_tap, p_tap, x_idler, p_idler, x_return, p_return). The bit enters
// only through the sign of the return-mode correlations.
Matrix6 conditional_entries(const AttackMoments& m, double sign) {
  const double a = 2.0 * m.n_ab + 1.0;
  const double e = 2.0 * m.n_e + 1.0;
  const double b = 2.0 * m.n_ba + 1.0;
  const double cab = sign * m.c_ab;
  const double cib = sign * m.c_ib;

  Matrix6 l;
  // clang-format off
  l <<  a,      0,      -m.c_ia, 0,      cab,   0,
        0,      a,      0,       m.c_ia, 0,     cab,
       -m.c_ia, 0,      e,       0,      cib,   0,
        0,      m.c_ia, 0,       e,      0,    -cib,
        cab,    0,      cib,     0,      b,     0,
        0,      cab,    0,      -cib,    0,     b;
  // clang-format on
  return kVacuumVariance * l;
}

}  // namespace

Covariance3Mode conditional_covariance(BobBit bit, const SystemParams& params, double n_s,
                                       double f_e) {
  const double sign = bit == BobBit::Zero ? 1.0 : -1.0;
  Covariance3Mode cov(conditional_entries(attack_moments(params, n_s, f_e), sign));
  symplectic_eigenvalues(cov);  // throws Unphysical
  return cov;
}

Covariance3Mode unconditional_covariance(const SystemParams& params, double n_s, double f_e) {
  const AttackMoments m = attack_moments(params, n_s, f_e);
  return Covariance3Mode(0.5 * (conditional_entries(m, 1.0) + conditional_entries(m, -1.0)));
}

AttackState make_attack_state(const SystemParams& params, double n_s, double f_e) {
  const AttackMoments m = attack_moments(params, n_s, f_e);
  const Matrix6 l0 = conditional_entries(m, 1.0);
  const Matrix6 l1 = conditional_entries(m, -1.0);
  AttackState state{f_e, n_s, m.n_e, Covariance3Mode(l0), Covariance3Mode(l1),
                    Covariance3Mode(0.5 * (l0 + l1))};
  return state;
}

double holevo_difference_unclamped(const SystemParams& params, double n_s, double f_e) {
  const AttackState state = make_attack_state(params, n_s, f_e);
  const double s_uncond = von_neumann_entropy(state.cov_uncond);
  const double s_cond =
      0.5 * (von_neumann_entropy(state.cov_k0) + von_neumann_entropy(state.cov_k1));
  // Tensor-product additivity: the M-mode entropies are M times the per-mode ones.
  return params.modes_per_bit * (s_uncond - s_cond);
}

double holevo_bound(const SystemParams& params, double n_s, double f_e) {
  return std::clamp(holevo_difference_unclamped(params, n_s, f_e), 0.0, 1.0);
}

double chernoff_ber_passive(const SystemParams& params, double n_s) {
  params.validate();
  if (!(n_s >= 0.0) || !std::isfinite(n_s)) fail(ErrorKind::Domain, "N_S must be finite and >= 0");
  const double exponent =
      4.0 * params.modes_per_bit * params.kappa * (1.0 - params.kappa) * (1.0 - params.kappa_b) * n_s * n_s;
  return 0.5 * std::exp(-exponent);
}

}  // namespace flqkd

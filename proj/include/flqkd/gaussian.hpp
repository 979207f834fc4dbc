#pragma once

// Symplectic spectra and von Neumann entropies of zero-mean Gaussian states.
//
// Covariances use the Wigner convention in which the vacuum quadrature
// variance is 1/4, with quadratures interleaved per mode:
// (x1, p1, x2, p2, ..., xn, pn).

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace flqkd {

inline constexpr double kVacuumVariance = 0.25;
inline constexpr double kPhysicalSlack = 1e-9;

/// Allowed dip below the vacuum variance: kPhysicalSlack, widened to the
/// rounding sensitivity of nu for large entries (16 eps |cov|_F^2).
double physical_slack(const Eigen::MatrixXd& cov);
inline constexpr double kSymmetryTolerance = 1e-12;

using Matrix6 = Eigen::Matrix<double, 6, 6>;

/// Block-diagonal symplectic form with 2x2 blocks [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int modes);

/// Wigner covariance of a three-mode Gaussian state, validated on construction
/// (symmetric, positive definite). Physicality is checked by the spectrum.
class Covariance3Mode {
 public:
  explicit Covariance3Mode(const Matrix6& entries);

  static Covariance3Mode vacuum();
  /// diag((2N_j+1)/4) for three thermal modes.
  static Covariance3Mode thermal(double n1, double n2, double n3);

  const Matrix6& entries() const noexcept { return entries_; }
  double operator()(int r, int c) const { return entries_(r, c); }

 private:
  Matrix6 entries_;
};

/// Three symplectic eigenvalues sorted descending, each >= 1/4 - 1e-9.
struct SymplecticSpectrum {
  std::array<double, 3> eigenvalues{};

  double product() const { return eigenvalues[0] * eigenvalues[1] * eigenvalues[2]; }
};

/// Spectrum of an arbitrary 2n x 2n covariance. Returns n moduli sorted
/// descending. Throws Validation for non-symmetric / non-PD input and
/// Unphysical if any eigenvalue falls below the vacuum floor.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cov);

SymplecticSpectrum symplectic_eigenvalues(const Covariance3Mode& cov);

/// g(N) = (N+1)log2(N+1) - N log2 N, in bits. g(N) = 0 for N < 1e-12.
double thermal_entropy(double mean_photons);

/// Sum of g(2 nu - 1/2) over the symplectic spectrum, in bits.
double von_neumann_entropy(const Eigen::MatrixXd& cov);
double von_neumann_entropy(const Covariance3Mode& cov);

/// Eigenvalues of Omega * cov (complex). Exposed for the pairing check.
Eigen::VectorXcd symplectic_generator_eigenvalues(const Eigen::MatrixXd& cov);

}  // namespace flqkd

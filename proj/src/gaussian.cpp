#include "flqkd/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "flqkd/errors.hpp"

namespace flqkd {

namespace {

void validate_covariance(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols() || cov.rows() == 0 || cov.rows() % 2 != 0) {
    fail(ErrorKind::Validation, "covariance must be a non-empty 2n x 2n matrix");
  }
  if (!cov.allFinite()) {
    fail(ErrorKind::Validation, "covariance has non-finite entries");
  }
  const double scale = cov.cwiseAbs().maxCoeff();
  const double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale) {
    std::ostringstream msg;
    msg << "covariance is not symmetric (max asymmetry " << asym << ")";
    fail(ErrorKind::Validation, msg.str());
  }
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (cov + cov.transpose()));
  if (llt.info() != Eigen::Success) {
    fail(ErrorKind::Validation, "covariance is not positive definite");
  }
}

}  // namespace

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int j = 0; j < modes; ++j) {
    omega(2 * j, 2 * j + 1) = 1.0;
    omega(2 * j + 1, 2 * j) = -1.0;
  }
  return omega;
}

Covariance3Mode::Covariance3Mode(const Matrix6& entries) : entries_(entries) {
  validate_covariance(entries_);
}

Covariance3Mode Covariance3Mode::vacuum() { return thermal(0.0, 0.0, 0.0); }

Covariance3Mode Covariance3Mode::thermal(double n1, double n2, double n3) {
  Matrix6 m = Matrix6::Zero();
  const double n[3] = {n1, n2, n3};
  for (int j = 0; j < 3; ++j) {
    m(2 * j, 2 * j) = m(2 * j + 1, 2 * j + 1) = (2.0 * n[j] + 1.0) * kVacuumVariance;
  }
  return Covariance3Mode(m);
}

namespace {

using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXcld = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, 1>;

// Extended precision keeps entropy differences of bright modes, which the
// Holevo bound multiplies by M, clear of rounding noise.
VectorXcld generator_eigenvalues(const Eigen::MatrixXd& cov) {
  const int modes = static_cast<int>(cov.rows() / 2);
  const MatrixXld product = symplectic_form(modes).cast<long double>() * cov.cast<long double>();
  Eigen::EigenSolver<MatrixXld> solver(product, false);
  if (solver.info() != Eigen::Success) {
    fail(ErrorKind::Validation, "eigen-decomposition of Omega*cov did not converge");
  }
  return solver.eigenvalues();
}

}  // namespace

Eigen::VectorXcd symplectic_generator_eigenvalues(const Eigen::MatrixXd& cov) {
  const VectorXcld ev = generator_eigenvalues(cov);
  Eigen::VectorXcd out(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    out[i] = {static_cast<double>(ev[i].real()), static_cast<double>(ev[i].imag())};
  }
  return out;
}

double physical_slack(const Eigen::MatrixXd& cov) {
  const double norm = cov.norm();
  return std::max(kPhysicalSlack, 16.0 * std::numeric_limits<double>::epsilon() * norm * norm);
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
  validate_covariance(cov);
  const VectorXcld ev = generator_eigenvalues(cov);
  const auto modes = static_cast<std::size_t>(cov.rows() / 2);

  // Eigenvalues come in +/- i*nu pairs; the upper half by imaginary part is one
  // member of each pair.
  std::vector<std::complex<long double>> sorted(ev.data(), ev.data() + ev.size());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.imag() > b.imag(); });
  std::vector<double> nu(modes);
  for (std::size_t j = 0; j < modes; ++j) nu[j] = static_cast<double>(std::abs(sorted[j]));
  std::sort(nu.begin(), nu.end(), std::greater<>());

  if (nu.back() < kVacuumVariance - physical_slack(cov)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "unphysical covariance: symplectic eigenvalue " << nu.back() << " below 1/4";
    fail(ErrorKind::Unphysical, msg.str());
  }
  return nu;
}

SymplecticSpectrum symplectic_eigenvalues(const Covariance3Mode& cov) {
  const auto nu = symplectic_eigenvalues(Eigen::MatrixXd(cov.entries()));
  SymplecticSpectrum out;
  std::copy(nu.begin(), nu.end(), out.eigenvalues.begin());
  return out;
}

double thermal_entropy(double n) {
  if (!(n >= 0.0)) fail(ErrorKind::Domain, "thermal_entropy: mean photon number must be >= 0");
  if (n < 1e-12) return 0.0;
  // (n+1) log2(n+1) - n log2 n without the cancellation between the two terms.
  return std::log2(n + 1.0) + n * std::log1p(1.0 / n) / std::numbers::ln2;
}

double von_neumann_entropy(const Eigen::MatrixXd& cov) {
  double bits = 0.0;
  for (double nu : symplectic_eigenvalues(cov)) {
    // Thermal mode with N photons has variance (2N+1)/4.
    bits += thermal_entropy(std::max(0.0, 2.0 * nu - 0.5));
  }
  return bits;
}

double von_neumann_entropy(const Covariance3Mode& cov) {
  return von_neumann_entropy(Eigen::MatrixXd(cov.entries()));
}

}  // namespace flqkd

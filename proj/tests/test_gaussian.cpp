#include "flqkd/gaussian.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "flqkd/errors.hpp"
#include "oracle/random_states.hpp"
#include "oracle/symplectic_oracle.hpp"

using namespace flqkd;

namespace {

std::vector<std::vector<double>> rows_of(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

Matrix6 two_mode_squeezed_plus_vacuum(double n) {
  Matrix6 m = Matrix6::Zero();
  const double a = 2.0 * n + 1.0;
  const double c = 2.0 * std::sqrt(n * (n + 1.0));
  m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = a;
  m(0, 2) = m(2, 0) = -c;
  m(1, 3) = m(3, 1) = c;
  m(4, 4) = m(5, 5) = 1.0;
  return 0.25 * m;
}

}  // namespace

TEST(Gaussian, VacuumSpectrum) {
  const auto s = symplectic_eigenvalues(Covariance3Mode::vacuum());
  for (double nu : s.eigenvalues) EXPECT_NEAR(nu, 0.25, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(Covariance3Mode::vacuum()), 0.0, 1e-15);
}

TEST(Gaussian, ThermalModeIsAlreadyWilliamsonForm) {
  const auto cov = Covariance3Mode::thermal(1.0, 0.0, 0.0);
  const auto s = symplectic_eigenvalues(cov);
  EXPECT_NEAR(s.eigenvalues[0], 0.75, 1e-14);
  EXPECT_NEAR(s.eigenvalues[1], 0.25, 1e-14);
  EXPECT_NEAR(s.eigenvalues[2], 0.25, 1e-14);
  EXPECT_NEAR(von_neumann_entropy(cov), 2.0, 1e-12);
}

TEST(Gaussian, TwoModeSqueezedStateIsPure) {
  for (double n : {0.5, 0.01, 3.0, 1e4}) {
    const Covariance3Mode cov(two_mode_squeezed_plus_vacuum(n));
    const auto s = symplectic_eigenvalues(cov);
    for (double nu : s.eigenvalues) EXPECT_NEAR(nu, 0.25, 1e-9 * std::max(1.0, n));
    // Rounding the entries of a state this squeezed moves nu by ~eps n^2.
    if (n < 100) EXPECT_LT(von_neumann_entropy(cov), 1e-8) << "n=" << n;
  }
  // Independent route for the N = 0.5 example.
  const auto nu = oracle::symplectic_eigenvalues(rows_of(two_mode_squeezed_plus_vacuum(0.5)));
  for (double v : nu) EXPECT_NEAR(v, 0.25, 1e-15);
}

TEST(Gaussian, ThermalEntropyValues) {
  EXPECT_EQ(thermal_entropy(0.0), 0.0);
  EXPECT_DOUBLE_EQ(thermal_entropy(1.0), 2.0);
  // 1.5 log2 1.5 - 0.5 log2 0.5, 40-digit evaluation.
  EXPECT_NEAR(thermal_entropy(0.5), 1.37744375108173427218, 1e-14);
  EXPECT_EQ(thermal_entropy(1e-13), 0.0);
  EXPECT_THROW(thermal_entropy(-1e-3), Error);
}

TEST(Gaussian, ThermalEntropyStrictlyIncreasing) {
  double prev = thermal_entropy(0.0);
  for (double n = 1e-6; n < 1e5; n *= 1.37) {
    const double g = thermal_entropy(n);
    EXPECT_GT(g, prev) << n;
    prev = g;
  }
}

TEST(Gaussian, DiagonalConventionConsistency) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> photons(0.0, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double n1 = photons(rng), n2 = photons(rng), n3 = photons(rng);
    const double expected = thermal_entropy(n1) + thermal_entropy(n2) + thermal_entropy(n3);
    EXPECT_NEAR(von_neumann_entropy(Covariance3Mode::thermal(n1, n2, n3)), expected, 1e-10);
  }
}

TEST(Gaussian, EigenvaluesOfOmegaCovComeInPairs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXd cov = fixtures::random_physical_covariance(3, rng);
    const Eigen::VectorXcd ev = symplectic_generator_eigenvalues(cov);
    EXPECT_LT(std::abs(ev.sum()), 1e-9);
    for (int i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev[i].real(), 0.0, 1e-9);
  }
}

TEST(Gaussian, MatchesIndependentOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXd cov = fixtures::random_physical_covariance(3, rng);
    const auto got = symplectic_eigenvalues(cov);
    const auto want = oracle::symplectic_eigenvalues(rows_of(cov));
    ASSERT_EQ(got.size(), 3u);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(got[j], want[j], 1e-9 * want[j]) << "trial " << trial;
  }
}

TEST(Gaussian, SymplecticImagesOfVacuumArePure) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    EXPECT_LT(von_neumann_entropy(fixtures::random_pure_covariance(3, rng)), 1e-8);
  }
}

TEST(Gaussian, SpectrumIsInvariantUnderSymplecticMaps) {
  std::mt19937_64 rng(5);
  const Eigen::MatrixXd cov = fixtures::random_physical_covariance(3, rng);
  const Eigen::MatrixXd s = fixtures::random_symplectic(3, rng, 0.5);
  const auto a = symplectic_eigenvalues(cov);
  const auto b = symplectic_eigenvalues(Eigen::MatrixXd(s * cov * s.transpose()));
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(a[j], b[j], 1e-10 * a[j]);
}

TEST(Gaussian, SpectrumInvariants) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix6 m = fixtures::random_physical_covariance(3, rng);
    const auto s = symplectic_eigenvalues(Covariance3Mode(m));
    EXPECT_GE(s.eigenvalues[0], s.eigenvalues[1]);
    EXPECT_GE(s.eigenvalues[1], s.eigenvalues[2]);
    EXPECT_GE(s.eigenvalues[2], 0.25 - 1e-9);
    EXPECT_GE(s.product(), std::pow(0.25, 3) - 1e-12);
  }
}

TEST(Gaussian, RejectsNonSymmetric) {
  Matrix6 m = Covariance3Mode::vacuum().entries();
  m(0, 2) = 0.01;
  try {
    Covariance3Mode bad(m);
    FAIL() << "expected a validation error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
  }
}

TEST(Gaussian, RejectsNonPositiveDefinite) {
  Matrix6 m = Covariance3Mode::vacuum().entries();
  m(3, 3) = -0.25;
  EXPECT_THROW(Covariance3Mode{m}, Error);
}

TEST(Gaussian, RejectsStatesBelowVacuum) {
  // Positive definite but violates the uncertainty relation.
  const Covariance3Mode sub_vacuum(0.1 * Matrix6::Identity());
  try {
    symplectic_eigenvalues(sub_vacuum);
    FAIL() << "expected an unphysical-state error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unphysical);
  }
}

TEST(Gaussian, GeneralModeCount) {
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(4, 4) * 0.25;
  cov(0, 0) = cov(1, 1) = 0.75;
  const auto nu = symplectic_eigenvalues(cov);
  ASSERT_EQ(nu.size(), 2u);
  EXPECT_NEAR(nu[0], 0.75, 1e-14);
  EXPECT_NEAR(von_neumann_entropy(cov), 2.0, 1e-12);
  EXPECT_THROW(symplectic_eigenvalues(Eigen::MatrixXd::Identity(3, 3)), Error);
}

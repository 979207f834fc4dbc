#pragma once

// Test-only reference route for symplectic spectra: long-double cyclic Jacobi
// on the symmetric matrix A^T A with A = sqrt(L) Omega sqrt(L). Its
// eigenvalues are nu_j^2, each appearing twice. Shares no code with the
// library's complex eigen-solve of Omega * L.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace flqkd::oracle {

using LMatrix = std::vector<std::vector<long double>>;

inline LMatrix identity(std::size_t n) {
  LMatrix m(n, std::vector<long double>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0L;
  return m;
}

inline LMatrix multiply(const LMatrix& a, const LMatrix& b) {
  const std::size_t n = a.size();
  LMatrix c(n, std::vector<long double>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline LMatrix transpose(const LMatrix& a) {
  LMatrix t = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) t[i][j] = a[j][i];
  return t;
}

/// Cyclic Jacobi: returns eigenvalues; `vectors` receives columns of eigenvectors.
inline std::vector<long double> jacobi_eigen(LMatrix a, LMatrix& vectors) {
  const std::size_t n = a.size();
  vectors = identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    long double off = 0.0L, diag = 0.0L;
    for (std::size_t p = 0; p < n; ++p) {
      diag += a[p][p] * a[p][p];
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    if (off <= 1e-40L * diag) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0L) continue;
        const long double theta = (a[q][q] - a[p][p]) / (2.0L * a[p][q]);
        const long double t = (theta >= 0 ? 1.0L : -1.0L) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0L));
        const long double c = 1.0L / std::sqrt(t * t + 1.0L);
        const long double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const long double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const long double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const long double vkp = vectors[k][p], vkq = vectors[k][q];
          vectors[k][p] = c * vkp - s * vkq;
          vectors[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<long double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  return ev;
}

inline LMatrix sqrt_spd(const LMatrix& a) {
  LMatrix v;
  const auto ev = jacobi_eigen(a, v);
  const std::size_t n = a.size();
  LMatrix d(n, std::vector<long double>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = std::sqrt(std::max(ev[i], 0.0L));
  return multiply(multiply(v, d), transpose(v));
}

/// Symplectic eigenvalues of a 2n x 2n covariance (row-major doubles), descending.
inline std::vector<double> symplectic_eigenvalues(const std::vector<std::vector<double>>& cov) {
  const std::size_t dim = cov.size();
  LMatrix l(dim, std::vector<long double>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) l[i][j] = cov[i][j];
  LMatrix omega(dim, std::vector<long double>(dim, 0.0L));
  for (std::size_t j = 0; j + 1 < dim; j += 2) {
    omega[j][j + 1] = 1.0L;
    omega[j + 1][j] = -1.0L;
  }
  const LMatrix root = sqrt_spd(l);
  const LMatrix a = multiply(multiply(root, omega), root);
  LMatrix v;
  auto ev = jacobi_eigen(multiply(transpose(a), a), v);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  std::vector<double> nu;
  for (std::size_t i = 0; i < dim; i += 2) nu.push_back(static_cast<double>(std::sqrt(0.5L * (ev[i] + ev[i + 1]))));
  return nu;
}

}  // namespace flqkd::oracle

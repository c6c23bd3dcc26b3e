#pragma once

// Hand-rolled generators for the property tests. They draw from their own
// std::mt19937_64 so test inputs do not depend on the library's sampler.

#include "vmedad/types.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <vector>

namespace testgen {

using Gen = std::mt19937_64;

inline double normal(Gen& g) { return std::normal_distribution<double>(0.0, 1.0)(g); }
inline double uniform(Gen& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }
inline int integer(Gen& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

inline std::vector<double> normal_values(Gen& g, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = normal(g);
  return v;
}

inline vmedad::DataMatrix gaussian(Gen& g, Eigen::Index n, Eigen::Index d, double scale = 1.0) {
  vmedad::Matrix m(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = scale * normal(g);
  return vmedad::DataMatrix(std::move(m));
}

/// Skewed cloud: exponential-ish coordinates, so moments are far from zero.
inline vmedad::DataMatrix skewed(Gen& g, Eigen::Index n, Eigen::Index d) {
  vmedad::Matrix m(n, d);
  std::exponential_distribution<double> e(1.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = e(g) + 0.3 * normal(g);
  return vmedad::DataMatrix(std::move(m));
}

/// {+v_1, -v_1, ..., +v_k, -v_k} with distinct random v (exactly paired).
inline vmedad::DataMatrix paired(Gen& g, Eigen::Index k, Eigen::Index d) {
  vmedad::Matrix m(2 * k, d);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double v = normal(g) * (1.0 + 0.5 * static_cast<double>(j));
      m(2 * i, j) = v;
      m(2 * i + 1, j) = -v;
    }
  }
  return vmedad::DataMatrix(std::move(m));
}

/// Haar-ish random orthogonal matrix from the QR of a Gaussian matrix.
inline Eigen::MatrixXd orthogonal(Gen& g, Eigen::Index d) {
  Eigen::MatrixXd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = normal(g);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
}

/// Random signed permutation matrix.
inline Eigen::MatrixXd signed_permutation(Gen& g, Eigen::Index d) {
  std::vector<Eigen::Index> p(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = i;
  std::shuffle(p.begin(), p.end(), g);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) q(i, p[static_cast<std::size_t>(i)]) = integer(g, 0, 1) ? 1.0 : -1.0;
  return q;
}

inline Eigen::MatrixXd well_conditioned(Gen& g, Eigen::Index d) {
  Eigen::MatrixXd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = normal(g) + (i == j ? 3.0 : 0.0);
  return a;
}

inline vmedad::Vector random_vector(Gen& g, Eigen::Index d, double scale = 1.0) {
  vmedad::Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = scale * normal(g);
  return v;
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// |a - b| within k units of rounding at the larger magnitude.
inline bool within_ulps(double a, double b, double k = 4.0) {
  return std::abs(a - b) <= k * std::numeric_limits<double>::epsilon() * std::max({std::abs(a), std::abs(b), 1e-300});
}

inline std::filesystem::path data_dir() { return VMEDAD_TEST_DATA; }
inline std::filesystem::path wdbc_path() { return VMEDAD_WDBC_PATH; }

}  // namespace testgen

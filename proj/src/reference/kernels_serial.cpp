#include "vmedad/reference.hpp"

#include <algorithm>
#include <cmath>

namespace vmedad::serial {

std::vector<double> spatial_depth_all(const DataMatrix& x) {
  const Eigen::Index n = x.n();
  const Eigen::Index d = x.d();
  if (n < 2) throw Error("depth undefined");
  const double* data = x.values().data();
  std::vector<double> depths(static_cast<std::size_t>(n));
  std::vector<double> acc(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0.0);
    const double* xi = data + i * d;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double* xj = data + j * d;
      double sq = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        const double t = xj[k] - xi[k];
        sq += t * t;
      }
      if (sq == 0.0) continue;
      const double norm = std::sqrt(sq);
      for (Eigen::Index k = 0; k < d; ++k) acc[k] += (xj[k] - xi[k]) / norm;
    }
    double mean_sq = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
      const double a = acc[k] / static_cast<double>(n);
      mean_sq += a * a;
    }
    depths[i] = std::clamp(1.0 - std::sqrt(mean_sq), 0.0, 1.0);
  }
  return depths;
}

double mardia_skewness_sum(const Matrix& z) {
  const Eigen::Index n = z.rows();
  const Eigen::Index d = z.cols();
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      double g = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) g += z(i, k) * z(j, k);
      row += g * g * g;
    }
    total += row;
  }
  const double nn = static_cast<double>(n);
  return total / (nn * nn);
}

}  // namespace vmedad::serial

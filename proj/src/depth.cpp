#include "vmedad/depth.hpp"

#include "vmedad/geometry.hpp"
#include "vmedad/medstats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vmedad {

std::vector<double> spatial_depth_all(const DataMatrix& x) {
  const Eigen::Index n = x.n();
  const Eigen::Index d = x.d();
  if (n < 2) throw Error("depth undefined");
  const double* data = x.values().data();
  std::vector<double> depths(static_cast<std::size_t>(n));

#pragma omp parallel
  {
    std::vector<double> acc(static_cast<std::size_t>(d));
#pragma omp for schedule(static)
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
        if (sq == 0.0) continue;  // self term and exact duplicates
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
  }
  return depths;
}

DepthValues depth_values(const DataMatrix& x, DepthScatter scatter) {
  if (scatter == DepthScatter::moment && x.n() > x.d()) {
    try {
      const Eigen::MatrixXd root = inverse_sqrt_spd(sample_covariance(x, CovarianceDivisor::unbiased));
      const Vector mean = x.values().colwise().mean().transpose();
      Matrix z = (x.values().rowwise() - mean.transpose()) * root;
      return {spatial_depth_all(DataMatrix(std::move(z))), true};
    } catch (const Error&) {
      // singular scatter: fall through to raw depth
    }
  }
  return {spatial_depth_all(x), false};
}

std::vector<std::size_t> DepthProfile::shell_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(b), 0);
  for (int s : shell_of) ++sizes[static_cast<std::size_t>(s)];
  return sizes;
}

std::vector<std::size_t> DepthProfile::members(int a) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < shell_of.size(); ++i) {
    if (shell_of[i] == a) out.push_back(i);
  }
  std::sort(out.begin(), out.end(), [&](std::size_t l, std::size_t r) { return ranks[l] < ranks[r]; });
  return out;
}

DepthProfile assign_shells(std::vector<double> depths, int b, ShellOrder order) {
  if (b < 2) throw Error("shell count must be at least 2");
  const std::size_t n = depths.size();
  if (n < static_cast<std::size_t>(b)) throw Error("too few observations for b shells");

  std::vector<std::size_t> by_depth(n);
  std::iota(by_depth.begin(), by_depth.end(), std::size_t{0});
  std::stable_sort(by_depth.begin(), by_depth.end(),
                   [&](std::size_t l, std::size_t r) { return depths[l] < depths[r]; });

  DepthProfile p;
  p.b = b;
  p.order = order;
  p.ranks.assign(n, 0);
  p.shell_of.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = by_depth[r];
    p.ranks[i] = r + 1;
    const int block = rank_block(r + 1, n, b);
    p.shell_of[i] = order == ShellOrder::center_out ? b - 1 - block : block;
  }
  p.depths = std::move(depths);
  return p;
}

}  // namespace vmedad

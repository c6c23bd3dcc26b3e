#pragma once

#include "vmedad/types.hpp"

#include <vector>

namespace vmedad {

/// Sample spatial depth of every observation:
///   D(x_i) = 1 - || (1/n) sum_j (x_j - x_i) / ||x_j - x_i|| ||
/// with the self term and exact duplicates contributing zero. O(n^2 d).
///
/// Rows are processed in parallel (OpenMP); each row's inner sum runs in
/// index order, so the result is bit-identical to serial::spatial_depth_all.
std::vector<double> spatial_depth_all(const DataMatrix& x);

/// Spatial depth after optional whitening by a scatter estimate.
///
/// With DepthScatter::moment the observations are mapped to
/// S^{-1/2} (x_i - mean) using the sample covariance S, which makes the depth
/// invariant under every nonsingular affine map. Falls back to raw depth and
/// reports standardized = false when S is singular.
struct DepthValues {
  std::vector<double> depths;
  bool standardized = false;
};
DepthValues depth_values(const DataMatrix& x, DepthScatter scatter);

struct DepthProfile {
  std::vector<double> depths;
  std::vector<std::size_t> ranks;  ///< 1-based ascending-depth rank per observation
  std::vector<int> shell_of;
  int b = 0;
  ShellOrder order = ShellOrder::center_out;

  std::size_t n() const { return depths.size(); }
  std::vector<std::size_t> shell_sizes() const;
  /// Observation indices in shell a, in ascending depth-rank order.
  std::vector<std::size_t> members(int a) const;
};

/// Splits the depth order into b blocks. Depth rank r (ascending, ties by
/// index) falls in block ceil(r*b/n) - 1; under center_out the blocks are
/// renumbered so shell 0 is the innermost block.
DepthProfile assign_shells(std::vector<double> depths, int b, ShellOrder order);

}  // namespace vmedad

#pragma once

// Vector median-absolute-deviation (VMedAD) moments: alternating sums of
// shellwise coordinate medians of the centred observations.

#include "vmedad/depth.hpp"
#include "vmedad/geometry.hpp"
#include "vmedad/types.hpp"

#include <map>
#include <optional>
#include <vector>

namespace vmedad {

struct MomentOptions {
  int b_max = 3;  ///< highest shell count; moments up to order b_max + 1
  ShellOrder shell_order = ShellOrder::center_out;
  DepthScatter depth_scatter = DepthScatter::moment;
  SpatialMedianOptions median{};
};

struct VMedadReport {
  Eigen::Index n = 0;
  Eigen::Index d = 0;
  int b_max = 0;
  ShellOrder shell_order = ShellOrder::center_out;
  DepthScatter depth_scatter = DepthScatter::moment;
  bool depth_standardized = false;

  CenterEstimate center;  ///< center.m is Phi_1
  Vector phi1;
  Vector phi2_vec;
  double phi2_scale = 0.0;
  Eigen::MatrixXd c_med;
  double c_med_trace = 0.0;  ///< reported beside phi2_scale^2; the two differ in general

  std::map<int, Vector> phi;    ///< order k >= 3
  std::map<int, Vector> psi;    ///< order k >= 2; empty when phi2_scale == 0
  std::map<int, double> norms;  ///< ||phi2_vec|| at k = 2, ||phi[k]|| above
  std::map<int, double> psi_norms;
  /// phi2_vec / ||phi2_vec||, only when ||phi2_vec|| > 1e-8 * phi2_scale.
  std::optional<Vector> psi2_direction;

  std::vector<double> depths;

  bool psi_defined() const { return phi2_scale > 0.0; }
};

/// Coordinate-wise median of the members of each shell, indexed by shell.
std::vector<Vector> shell_medians(const DataMatrix& u, const DepthProfile& profile);

/// Phi_{b+1} = sum_a (-1)^(a+1) Med{u_i : i in shell a}.
Vector vector_moment(const DataMatrix& u, const DepthProfile& profile, int b);

/// Phi_3, from a two-shell profile.
Vector skewness_vector(const DataMatrix& u, const DepthProfile& profile_b2);

/// Phi_4, from a three-shell profile.
Vector peripheral_vector(const DataMatrix& u, const DepthProfile& profile_b3);

/// Psi_k = Phi_k / scale. Throws Error("degenerate scale") for scale <= 0.
Vector standardized(const Vector& phi_k, double scale);

/// Every VMedAD quantity for one sample. Depth is computed once and each
/// order reuses it with its own shell count.
VMedadReport full_report(const DataMatrix& x, const MomentOptions& opts = {});

}  // namespace vmedad

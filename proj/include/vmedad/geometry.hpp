#pragma once

#include "vmedad/types.hpp"

#include <vector>

namespace vmedad {

struct SpatialMedianOptions {
  double tol = 1e-10;  ///< on ||m_{k+1} - m_k|| / (1 + ||m_k||)
  int max_iter = 500;
  /// Newton steps taken after the reweighting loop converges. Each step is
  /// kept only if it does not increase the objective.
  int polish_steps = 4;
};

struct CenterEstimate {
  Vector m;
  int iterations = 0;         ///< Weiszfeld iterations
  int polish_iterations = 0;  ///< accepted Newton steps after Weiszfeld
  bool converged = false;
  double final_step = 0.0;
  /// Sum of distances at the initial point and every Weiszfeld iterate
  /// (non-increasing). Newton polishing is not traced.
  std::vector<double> objective_trace;
};

/// Minimizer of sum_i ||x_i - m||.
///
/// Iterative reweighting (Weiszfeld) started at the coordinate-wise median.
/// When the current iterate coincides with data points the Vardi-Zhang
/// correction is used: the coinciding points' mass eta is compared with the
/// pull r of the remaining points, the iterate is optimal when r <= eta, and
/// otherwise the step is damped by min(1, eta / r).
CenterEstimate spatial_median(const DataMatrix& x, const SpatialMedianOptions& opts = {});

/// Sum of Euclidean distances from m to every row of x.
double spatial_median_objective(const DataMatrix& x, const Vector& m);

/// Row i becomes x_i - m.
DataMatrix center(const DataMatrix& x, const Vector& m);

/// Per-column median.
Vector coordwise_median(const DataMatrix& u);

/// Entry (j, k) is the median over i of u_ij * u_ik. Computed once per
/// unordered pair and mirrored, so the result is exactly symmetric.
Eigen::MatrixXd comedian_matrix(const DataMatrix& u);

/// sqrt(Med ||u_i||^2).
double medad_scale(const DataMatrix& u);

/// Mean-centred sample covariance.
Eigen::MatrixXd sample_covariance(const DataMatrix& x, CovarianceDivisor divisor);

/// Symmetric inverse square root V diag(1/sqrt(lambda)) V^T of a symmetric
/// positive-definite matrix. Throws Error("degenerate covariance") when the
/// smallest eigenvalue is not safely positive.
Eigen::MatrixXd inverse_sqrt_spd(const Eigen::MatrixXd& s);

}  // namespace vmedad

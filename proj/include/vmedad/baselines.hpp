#pragma once

// Classical covariance-standardized comparators: Mardia's multivariate
// skewness/kurtosis and the Mori-Rohatgi-Szekely (MRSz) vector skewness and
// kurtosis matrix.

#include "vmedad/types.hpp"

namespace vmedad {

struct MardiaStats {
  double skewness = 0.0;  ///< b_{1,d}
  double kurtosis = 0.0;  ///< b_{2,d}
};

struct MrszKurtosis {
  Eigen::MatrixXd raw;       ///< (1/n) sum ||z_i||^2 z_i z_i^T
  Eigen::MatrixXd centered;  ///< raw - (d + 2) I
};

struct BaselineReport {
  CovarianceDivisor divisor = CovarianceDivisor::unbiased;
  MardiaStats mardia;
  Vector mrsz_skew;
  MrszKurtosis mrsz_kurt;
};

/// Rows z_i = S^{-1/2} (x_i - mean) with the symmetric inverse root.
/// Requires n > d; throws Error("degenerate covariance") for singular S.
Matrix standardize(const DataMatrix& x, CovarianceDivisor divisor);

/// b1 = (1/n^2) sum_ij g_ij^3, b2 = (1/n) sum_i g_ii^2 with g_ij = z_i . z_j.
/// The O(n^2) skewness sum runs row-parallel with a fixed reduction order.
MardiaStats mardia(const DataMatrix& x, CovarianceDivisor divisor = CovarianceDivisor::unbiased);

/// gamma = (1/n) sum_i ||z_i||^2 z_i.
Vector mrsz_skew(const DataMatrix& x, CovarianceDivisor divisor = CovarianceDivisor::unbiased);

MrszKurtosis mrsz_kurt(const DataMatrix& x, CovarianceDivisor divisor = CovarianceDivisor::unbiased);

BaselineReport baseline_report(const DataMatrix& x,
                               CovarianceDivisor divisor = CovarianceDivisor::unbiased);

}  // namespace vmedad

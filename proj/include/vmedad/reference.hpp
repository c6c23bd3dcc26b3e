#pragma once

// Single-threaded reference versions of the parallel kernels. They share the
// summation order of the OpenMP kernels, so the two must agree bit for bit;
// the tests and the benchmark compare them.

#include "vmedad/types.hpp"

#include <vector>

namespace vmedad::serial {

std::vector<double> spatial_depth_all(const DataMatrix& x);

/// (1/n^2) sum_i sum_j g_ij^3 for g = Z Z^T with Z the standardized rows.
double mardia_skewness_sum(const Matrix& z);

}  // namespace vmedad::serial

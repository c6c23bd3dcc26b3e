#pragma once

// Scalar median primitives and the univariate median-absolute-deviation
// moment system built on quantile slices.

#include <map>
#include <span>
#include <vector>

namespace vmedad {

/// Middle order statistic for odd n, mean of the two middle ones for even n.
/// Throws Error("empty sample") on empty input and rejects non-finite values.
double median(std::span<const double> values);

/// Med |x - median(x)|.
double mad_about_median(std::span<const double> values);

/// Partitions the sample into b contiguous blocks of the ascending order
/// (ties broken by original index). The observation of 1-based rank r goes to
/// slice ceil(r*b/n) - 1, so later slices absorb the remainder when b does not
/// divide n. Each slice lists original indices in ascending rank order.
std::vector<std::vector<std::size_t>> quantile_slices(std::span<const double> values, int b);

/// Phi_{b+1}: median for b = 0, MAD for b = 1, and for b >= 2 the alternating
/// sum over slices a of (-1)^(a+1) * Med{|x - M| : x in slice a}.
double uni_medad_moment(std::span<const double> values, int b);

/// Psi_{b+1} = Phi_{b+1} / Phi_2 for b >= 2. Throws Error("degenerate scale")
/// when the MAD is zero.
double uni_standardized(std::span<const double> values, int b);

struct UniMedadMoments {
  double m = 0.0;
  std::map<int, double> phi;  ///< order k >= 2
  std::map<int, double> psi;  ///< order k >= 3, present only when phi[2] > 0
};

/// Phi_2..Phi_{b_max+1} and the matching standardized moments.
UniMedadMoments uni_medad_moments(std::span<const double> values, int b_max);

/// Assigns block index ceil(r*b/n) - 1 to 1-based rank r in [1, n].
inline int rank_block(std::size_t rank, std::size_t n, int b) {
  const auto bb = static_cast<std::size_t>(b);
  return static_cast<int>((rank * bb + n - 1) / n) - 1;
}

}  // namespace vmedad

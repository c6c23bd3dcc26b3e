#include "vmedad/medstats.hpp"

#include "vmedad/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vmedad {

namespace {

void require_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw Error("sample contains non-finite values");
  }
}

// Median of a scratch buffer; reorders it.
double median_inplace(std::vector<double>& buf) {
  const std::size_t n = buf.size();
  const std::size_t mid = n / 2;
  std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(mid), buf.end());
  const double upper = buf[mid];
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

double median(std::span<const double> values) {
  if (values.empty()) throw Error("empty sample");
  require_finite(values);
  std::vector<double> buf(values.begin(), values.end());
  return median_inplace(buf);
}

double mad_about_median(std::span<const double> values) {
  const double m = median(values);
  std::vector<double> dev(values.size());
  std::transform(values.begin(), values.end(), dev.begin(), [m](double x) { return std::abs(x - m); });
  return median_inplace(dev);
}

std::vector<std::vector<std::size_t>> quantile_slices(std::span<const double> values, int b) {
  if (b < 1) throw Error("slice count must be positive");
  const std::size_t n = values.size();
  if (n < static_cast<std::size_t>(b)) throw Error("too few observations for b slices");
  require_finite(values);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });

  std::vector<std::vector<std::size_t>> slices(static_cast<std::size_t>(b));
  for (std::size_t r = 0; r < n; ++r) {
    slices[static_cast<std::size_t>(rank_block(r + 1, n, b))].push_back(order[r]);
  }
  return slices;
}

double uni_medad_moment(std::span<const double> values, int b) {
  if (b < 0) throw Error("moment order b must be non-negative");
  if (b == 0) return median(values);
  if (b == 1) return mad_about_median(values);

  const double m = median(values);
  const auto slices = quantile_slices(values, b);
  double total = 0.0;
  std::vector<double> buf;
  for (std::size_t a = 0; a < slices.size(); ++a) {
    buf.clear();
    for (std::size_t i : slices[a]) buf.push_back(std::abs(values[i] - m));
    const double sign = (a % 2 == 0) ? -1.0 : 1.0;
    total += sign * median_inplace(buf);
  }
  return total;
}

double uni_standardized(std::span<const double> values, int b) {
  if (b < 2) throw Error("standardized moments need b >= 2");
  const double scale = mad_about_median(values);
  if (!(scale > 0.0)) throw Error("degenerate scale");
  return uni_medad_moment(values, b) / scale;
}

UniMedadMoments uni_medad_moments(std::span<const double> values, int b_max) {
  UniMedadMoments out;
  out.m = median(values);
  const double scale = mad_about_median(values);
  out.phi[2] = scale;
  for (int b = 2; b <= b_max; ++b) {
    const double phi = uni_medad_moment(values, b);
    out.phi[b + 1] = phi;
    if (scale > 0.0) out.psi[b + 1] = phi / scale;
  }
  return out;
}

}  // namespace vmedad

#include "vmedad/baselines.hpp"

#include "vmedad/geometry.hpp"

#include <vector>

namespace vmedad {

namespace {

double mardia_skewness_sum(const Matrix& z) {
  const Eigen::Index n = z.rows();
  const Eigen::Index d = z.cols();
  std::vector<double> rows(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      double g = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) g += z(i, k) * z(j, k);
      row += g * g * g;
    }
    rows[static_cast<std::size_t>(i)] = row;
  }
  double total = 0.0;
  for (double r : rows) total += r;
  const double nn = static_cast<double>(n);
  return total / (nn * nn);
}

}  // namespace

Matrix standardize(const DataMatrix& x, CovarianceDivisor divisor) {
  if (x.n() <= x.d()) throw Error("degenerate covariance");
  const Eigen::MatrixXd root = inverse_sqrt_spd(sample_covariance(x, divisor));
  const Vector mean = x.values().colwise().mean().transpose();
  return (x.values().rowwise() - mean.transpose()) * root;
}

MardiaStats mardia(const DataMatrix& x, CovarianceDivisor divisor) {
  const Matrix z = standardize(x, divisor);
  MardiaStats s;
  s.skewness = mardia_skewness_sum(z);
  s.kurtosis = z.rowwise().squaredNorm().array().square().mean();
  return s;
}

Vector mrsz_skew(const DataMatrix& x, CovarianceDivisor divisor) {
  const Matrix z = standardize(x, divisor);
  Vector gamma = Vector::Zero(x.d());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    gamma += z.row(i).squaredNorm() * z.row(i).transpose();
  }
  return gamma / static_cast<double>(z.rows());
}

MrszKurtosis mrsz_kurt(const DataMatrix& x, CovarianceDivisor divisor) {
  const Matrix z = standardize(x, divisor);
  const Eigen::Index d = x.d();
  Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const Vector zi = z.row(i).transpose();
    raw += zi.squaredNorm() * (zi * zi.transpose());
  }
  raw /= static_cast<double>(z.rows());
  raw = 0.5 * (raw + raw.transpose()).eval();
  MrszKurtosis k;
  k.centered = raw - static_cast<double>(d + 2) * Eigen::MatrixXd::Identity(d, d);
  k.raw = std::move(raw);
  return k;
}

BaselineReport baseline_report(const DataMatrix& x, CovarianceDivisor divisor) {
  BaselineReport r;
  r.divisor = divisor;
  r.mardia = mardia(x, divisor);
  r.mrsz_skew = mrsz_skew(x, divisor);
  r.mrsz_kurt = mrsz_kurt(x, divisor);
  return r;
}

}  // namespace vmedad

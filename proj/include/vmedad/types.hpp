#pragma once

#include <Eigen/Core>

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace vmedad {

/// Row-major so that one observation is contiguous in memory.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An n x d sample of finite observations, n >= 1 and d >= 1.
class DataMatrix {
 public:
  explicit DataMatrix(Matrix values);

  static DataMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static DataMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  /// One observation per entry of a univariate sample.
  static DataMatrix from_column(const std::vector<double>& values);

  Eigen::Index n() const { return values_.rows(); }
  Eigen::Index d() const { return values_.cols(); }
  const Matrix& values() const { return values_; }
  auto row(Eigen::Index i) const { return values_.row(i); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

  std::vector<double> column(Eigen::Index j) const;

  /// A X^T + t applied row-wise.
  DataMatrix transformed(const Eigen::MatrixXd& a, const Vector& t) const;

  friend bool operator==(const DataMatrix& lhs, const DataMatrix& rhs) {
    return lhs.values_.rows() == rhs.values_.rows() && lhs.values_.cols() == rhs.values_.cols() &&
           lhs.values_ == rhs.values_;
  }

 private:
  Matrix values_;
};

enum class ShellOrder { center_out, depth_ascending };

/// Scatter used to standardize observations before depth is computed.
enum class DepthScatter {
  none,    ///< plain spatial depth of the raw observations
  moment,  ///< affine-invariant spatial depth: data whitened by the sample covariance
};

/// Divisor of the mean-centred sample covariance.
enum class CovarianceDivisor {
  unbiased,    ///< 1/(n-1)
  population,  ///< 1/n
};

std::string to_string(ShellOrder order);
std::string to_string(DepthScatter scatter);
std::string to_string(CovarianceDivisor divisor);
ShellOrder parse_shell_order(const std::string& text);
DepthScatter parse_depth_scatter(const std::string& text);
CovarianceDivisor parse_covariance_divisor(const std::string& text);

}  // namespace vmedad

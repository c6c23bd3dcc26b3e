#include "vmedad/types.hpp"

#include <cmath>

namespace vmedad {

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw Error("data matrix needs at least one row and one column");
  }
  if (!values_.allFinite()) {
    throw Error("data matrix contains non-finite entries");
  }
}

DataMatrix DataMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw Error("data matrix needs at least one row and one column");
  }
  const auto d = rows.front().size();
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) {
      throw Error("ragged rows: row " + std::to_string(i) + " has " +
                  std::to_string(rows[i].size()) + " entries, expected " + std::to_string(d));
    }
    for (std::size_t j = 0; j < d; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return DataMatrix(std::move(m));
}

DataMatrix DataMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> copy;
  copy.reserve(rows.size());
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(copy);
}

DataMatrix DataMatrix::from_column(const std::vector<double>& values) {
  Matrix m(static_cast<Eigen::Index>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = values[i];
  return DataMatrix(std::move(m));
}

std::vector<double> DataMatrix::column(Eigen::Index j) const {
  std::vector<double> out(static_cast<std::size_t>(n()));
  for (Eigen::Index i = 0; i < n(); ++i) out[static_cast<std::size_t>(i)] = values_(i, j);
  return out;
}

DataMatrix DataMatrix::transformed(const Eigen::MatrixXd& a, const Vector& t) const {
  if (a.cols() != d() || t.size() != a.rows()) {
    throw Error("transform dimension mismatch");
  }
  Matrix out = values_ * a.transpose();
  out.rowwise() += t.transpose();
  return DataMatrix(std::move(out));
}

std::string to_string(ShellOrder order) {
  return order == ShellOrder::center_out ? "center_out" : "depth_ascending";
}

std::string to_string(DepthScatter scatter) {
  return scatter == DepthScatter::moment ? "moment" : "none";
}

std::string to_string(CovarianceDivisor divisor) {
  return divisor == CovarianceDivisor::unbiased ? "unbiased" : "population";
}

ShellOrder parse_shell_order(const std::string& text) {
  if (text == "center_out" || text == "center-out") return ShellOrder::center_out;
  if (text == "depth_ascending" || text == "depth-ascending") return ShellOrder::depth_ascending;
  throw Error("unknown shell order '" + text + "'");
}

DepthScatter parse_depth_scatter(const std::string& text) {
  if (text == "moment") return DepthScatter::moment;
  if (text == "none") return DepthScatter::none;
  throw Error("unknown depth scatter '" + text + "'");
}

CovarianceDivisor parse_covariance_divisor(const std::string& text) {
  if (text == "unbiased" || text == "n-1") return CovarianceDivisor::unbiased;
  if (text == "population" || text == "n") return CovarianceDivisor::population;
  throw Error("unknown covariance divisor '" + text + "'");
}

}  // namespace vmedad

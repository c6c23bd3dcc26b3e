#include "vmedad/geometry.hpp"

#include "vmedad/medstats.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <optional>

namespace vmedad {

namespace {

struct Pull {
  Vector weighted_sum;  // sum over non-coinciding i of x_i / dist_i
  Vector residual;      // sum over non-coinciding i of (x_i - y) / dist_i
  double weight = 0.0;  // sum of 1 / dist_i
  double objective = 0.0;
  int coinciding = 0;
};

Pull compute_pull(const Matrix& x, const Vector& y) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  const double coincide_tol = 1e-12 * (1.0 + y.norm());
  Pull p;
  p.weighted_sum = Vector::Zero(d);
  p.residual = Vector::Zero(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector diff = x.row(i).transpose() - y;
    const double dist = diff.norm();
    p.objective += dist;
    if (dist <= coincide_tol) {
      ++p.coinciding;
      continue;
    }
    const double w = 1.0 / dist;
    p.weight += w;
    p.weighted_sum += w * x.row(i).transpose();
    p.residual += w * diff;
  }
  return p;
}

// One Newton step on the distance sum; empty when the Hessian is unusable.
std::optional<Vector> newton_step(const Matrix& x, const Vector& y) {
  const Eigen::Index d = x.cols();
  Vector grad = Vector::Zero(d);
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(d, d);
  const double coincide_tol = 1e-12 * (1.0 + y.norm());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const Vector diff = y - x.row(i).transpose();
    const double dist = diff.norm();
    if (dist <= coincide_tol) return std::nullopt;
    const Vector unit = diff / dist;
    grad += unit;
    hess += (Eigen::MatrixXd::Identity(d, d) - unit * unit.transpose()) / dist;
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.rcond() < 1e-12) return std::nullopt;
  Vector step = ldlt.solve(-grad);
  if (!step.allFinite()) return std::nullopt;
  return step;
}

}  // namespace

double spatial_median_objective(const DataMatrix& x, const Vector& m) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.n(); ++i) total += (x.row(i).transpose() - m).norm();
  return total;
}

CenterEstimate spatial_median(const DataMatrix& x, const SpatialMedianOptions& opts) {
  const Matrix& pts = x.values();
  CenterEstimate est;
  Vector y = coordwise_median(x);
  Pull pull = compute_pull(pts, y);
  est.objective_trace.push_back(pull.objective);

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    if (pull.weight == 0.0) {
      // every observation sits on y
      est.converged = true;
      est.final_step = 0.0;
      break;
    }
    const Vector target = pull.weighted_sum / pull.weight;
    Vector next = target;
    if (pull.coinciding > 0) {
      const double eta = static_cast<double>(pull.coinciding);
      const double r = pull.residual.norm();
      if (r <= eta) {
        est.converged = true;
        est.final_step = 0.0;
        break;
      }
      const double gamma = eta / r;
      next = (1.0 - gamma) * target + gamma * y;
    }
    const double step = (next - y).norm() / (1.0 + y.norm());
    Pull next_pull = compute_pull(pts, next);
    if (next_pull.objective > pull.objective) {
      // rounding-level increase: keep the current iterate
      est.final_step = step;
      est.converged = step <= opts.tol;
      break;
    }
    y = std::move(next);
    pull = std::move(next_pull);
    est.iterations = iter + 1;
    est.final_step = step;
    est.objective_trace.push_back(pull.objective);
    if (step <= opts.tol) {
      est.converged = true;
      break;
    }
  }

  // Newton polishing. Near the optimum the objective changes by less than its
  // own rounding error, so steps are judged by the gradient norm instead.
  double grad_norm = pull.coinciding == 0 ? pull.residual.norm() : 0.0;
  for (int s = 0; s < opts.polish_steps && grad_norm > 0.0; ++s) {
    auto delta = newton_step(pts, y);
    if (!delta) break;
    // Close to a data point the full step can overshoot; halve it until the
    // gradient shrinks.
    std::optional<Pull> cand;
    for (int halving = 0; halving < 30; ++halving, *delta *= 0.5) {
      Pull trial = compute_pull(pts, y + *delta);
      if (trial.coinciding == 0 && trial.residual.norm() < grad_norm) {
        cand = std::move(trial);
        break;
      }
    }
    if (!cand) break;
    const double step = delta->norm() / (1.0 + y.norm());
    y += *delta;
    grad_norm = cand->residual.norm();
    est.polish_iterations = s + 1;
    if (step <= opts.tol) {
      est.converged = true;
      est.final_step = std::min(est.final_step, step);
    }
  }

  est.m = std::move(y);
  return est;
}

DataMatrix center(const DataMatrix& x, const Vector& m) {
  if (m.size() != x.d()) {
    throw Error("center: dimension mismatch (" + std::to_string(m.size()) + " vs " +
                std::to_string(x.d()) + ")");
  }
  Matrix out = x.values();
  out.rowwise() -= m.transpose();
  return DataMatrix(std::move(out));
}

Vector coordwise_median(const DataMatrix& u) {
  Vector out(u.d());
  for (Eigen::Index j = 0; j < u.d(); ++j) {
    const auto col = u.column(j);
    out(j) = median(col);
  }
  return out;
}

Eigen::MatrixXd comedian_matrix(const DataMatrix& u) {
  const Eigen::Index d = u.d();
  const Eigen::Index n = u.n();
  Eigen::MatrixXd c(d, d);
  std::vector<double> prod(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j; k < d; ++k) {
      for (Eigen::Index i = 0; i < n; ++i) prod[static_cast<std::size_t>(i)] = u(i, j) * u(i, k);
      const double v = median(prod);
      c(j, k) = v;
      c(k, j) = v;
    }
  }
  return c;
}

double medad_scale(const DataMatrix& u) {
  std::vector<double> sq(static_cast<std::size_t>(u.n()));
  for (Eigen::Index i = 0; i < u.n(); ++i) sq[static_cast<std::size_t>(i)] = u.row(i).squaredNorm();
  return std::sqrt(median(sq));
}

Eigen::MatrixXd sample_covariance(const DataMatrix& x, CovarianceDivisor divisor) {
  const Eigen::Index n = x.n();
  const double denom = divisor == CovarianceDivisor::unbiased ? static_cast<double>(n - 1)
                                                              : static_cast<double>(n);
  if (!(denom > 0.0)) throw Error("degenerate covariance");
  const Vector mean = x.values().colwise().mean().transpose();
  const Eigen::MatrixXd centred = x.values().rowwise() - mean.transpose();
  return (centred.transpose() * centred) / denom;
}

Eigen::MatrixXd inverse_sqrt_spd(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
  if (eig.info() != Eigen::Success) throw Error("degenerate covariance");
  const Vector lambda = eig.eigenvalues();
  const double largest = lambda.cwiseAbs().maxCoeff();
  if (!(lambda.minCoeff() > 1e-12 * largest) || !(largest > 0.0)) {
    throw Error("degenerate covariance");
  }
  const Vector inv_root = lambda.cwiseSqrt().cwiseInverse();
  return eig.eigenvectors() * inv_root.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace vmedad

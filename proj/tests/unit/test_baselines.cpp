#include "support.hpp"

#include "vmedad/baselines.hpp"
#include "vmedad/reference.hpp"
#include "vmedad/simulate.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

using namespace vmedad;

namespace {

// Oracle: standardize with an eigen-decomposition and sum over plain loops.
struct NaiveBaselines {
  double b1 = 0, b2 = 0;
  Vector gamma;
  Eigen::MatrixXd raw;
};

NaiveBaselines naive(const DataMatrix& x, double divisor) {
  const Eigen::MatrixXd v = x.values();
  const Eigen::Index n = v.rows(), d = v.cols();
  const Eigen::RowVectorXd mean = v.colwise().sum() / static_cast<double>(n);
  const Eigen::MatrixXd c = v.rowwise() - mean;
  const Eigen::MatrixXd s = c.transpose() * c / divisor;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  const Eigen::MatrixXd root = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                               es.eigenvectors().transpose();
  const Eigen::MatrixXd z = c * root;
  NaiveBaselines out;
  out.gamma = Vector::Zero(d);
  out.raw = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r2 = z.row(i).squaredNorm();
    out.b2 += r2 * r2 / static_cast<double>(n);
    out.gamma += r2 * z.row(i).transpose() / static_cast<double>(n);
    out.raw += r2 * z.row(i).transpose() * z.row(i) / static_cast<double>(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double gij = z.row(i).dot(z.row(j));
      out.b1 += gij * gij * gij;
    }
  }
  out.b1 /= static_cast<double>(n) * static_cast<double>(n);
  return out;
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("one-dimensional examples") {
  const DataMatrix x = DataMatrix::from_column({-1, 0, 1});
  const auto pop = mardia(x, CovarianceDivisor::population);
  CHECK(pop.skewness == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(pop.kurtosis == doctest::Approx(1.5));
  const auto unb = mardia(x);
  CHECK(unb.kurtosis == doctest::Approx(2.0 / 3.0));
  CHECK(std::abs(mrsz_skew(x)(0)) < 1e-15);

  const auto k = mrsz_kurt(DataMatrix::from_column({-1, 1}), CovarianceDivisor::population);
  CHECK(k.raw(0, 0) == doctest::Approx(1.0));
  CHECK(k.centered(0, 0) == doctest::Approx(-2.0));
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_WITH_AS(mardia(DataMatrix::from_rows({{0, 0}, {1, 1}, {2, 2}, {3, 3}})), "degenerate covariance",
                       Error);
  CHECK_THROWS_AS(mardia(DataMatrix::from_rows({{0, 0}, {1, 2}})), Error);  // n <= d
  CHECK_THROWS_AS(mrsz_skew(DataMatrix::from_column({4, 4, 4})), Error);
}

TEST_CASE("property: agrees with a naive oracle") {
  testgen::Gen g(61);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = testgen::integer(g, 1, 4);
    const DataMatrix x = testgen::skewed(g, testgen::integer(g, d + 2, 90), d);
    for (auto div : {CovarianceDivisor::unbiased, CovarianceDivisor::population}) {
      const double n = static_cast<double>(x.n());
      const auto want = naive(x, div == CovarianceDivisor::unbiased ? n - 1 : n);
      const auto rep = baseline_report(x, div);
      CHECK(rep.divisor == div);
      CHECK(rep.mardia.skewness == doctest::Approx(want.b1).epsilon(1e-9));
      CHECK(rep.mardia.kurtosis == doctest::Approx(want.b2).epsilon(1e-9));
      CHECK(testgen::max_abs(rep.mrsz_skew - want.gamma) <= 1e-9 * (1 + want.gamma.norm()));
      CHECK(testgen::max_abs(rep.mrsz_kurt.raw - want.raw) <= 1e-9 * (1 + want.raw.norm()));
      CHECK(testgen::max_abs(rep.mrsz_kurt.centered - (want.raw - (d + 2.0) * Eigen::MatrixXd::Identity(d, d))) <=
            1e-9 * (1 + want.raw.norm()));
    }
  }
}

TEST_CASE("property: the trace of the raw kurtosis matrix is b2") {
  testgen::Gen g(62);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = testgen::integer(g, 1, 5);
    const DataMatrix x = testgen::skewed(g, testgen::integer(g, d + 2, 200), d);
    const auto rep = baseline_report(x);
    CHECK(testgen::within_ulps(rep.mrsz_kurt.raw.trace(), rep.mardia.kurtosis, 64));
    CHECK(rep.mardia.skewness >= 0.0);
    CHECK(rep.mrsz_kurt.raw == rep.mrsz_kurt.raw.transpose());
  }
}

TEST_CASE("property: affine invariance of b1, b2 and the norm of gamma") {
  testgen::Gen g(63);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = testgen::integer(g, 2, 4);
    const DataMatrix x = testgen::skewed(g, testgen::integer(g, 10, 150), d);
    const DataMatrix y = x.transformed(testgen::well_conditioned(g, d), testgen::random_vector(g, d, 5));
    const auto a = baseline_report(x);
    const auto b = baseline_report(y);
    CHECK(b.mardia.skewness == doctest::Approx(a.mardia.skewness).epsilon(1e-8));
    CHECK(b.mardia.kurtosis == doctest::Approx(a.mardia.kurtosis).epsilon(1e-8));
    CHECK(b.mrsz_skew.norm() == doctest::Approx(a.mrsz_skew.norm()).epsilon(1e-8));
  }
}

TEST_CASE("property: paired samples have zero skewness") {
  testgen::Gen g(64);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = testgen::integer(g, 1, 4);
    const DataMatrix x = testgen::paired(g, testgen::integer(g, d + 1, 60), d);
    const auto rep = baseline_report(x);
    CHECK(rep.mardia.skewness <= 1e-20 + 1e-12 * rep.mardia.kurtosis);
    CHECK(rep.mrsz_skew.norm() <= 1e-12);
  }
}

TEST_CASE("large normal samples approach the Gaussian values") {
  const DataMatrix x = sample_mvn(100000, Vector::Zero(2), Eigen::MatrixXd::Identity(2, 2), 2024);
  const auto k = mrsz_kurt(x);
  CHECK(k.raw.trace() == doctest::Approx(8.0).epsilon(0.02));
  CHECK(testgen::max_abs(k.raw - 4.0 * Eigen::MatrixXd::Identity(2, 2)) < 0.15);
  CHECK(mrsz_skew(x).norm() < 0.05);
  CHECK(mardia(DataMatrix(x.values().topRows(5000))).skewness < 0.01);
}

TEST_CASE("serial reference sum") {
  testgen::Gen g(65);
  const DataMatrix x = testgen::skewed(g, 60, 3);
  const Matrix z = standardize(x, CovarianceDivisor::unbiased);
  CHECK(serial::mardia_skewness_sum(z) == mardia(x).skewness);
  const auto want = naive(x, 59.0);
  CHECK(serial::mardia_skewness_sum(z) == doctest::Approx(want.b1).epsilon(1e-10));
}

}  // TEST_SUITE

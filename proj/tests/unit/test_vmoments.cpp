#include "support.hpp"

#include "vmedad/baselines.hpp"
#include "vmedad/geometry.hpp"
#include "vmedad/medstats.hpp"
#include "vmedad/simulate.hpp"
#include "vmedad/vmoments.hpp"

#include <doctest.h>

#include <numbers>

using namespace vmedad;

namespace {

// Phi_{b+1} recomputed from scratch: shells from sorted depths, plain medians.
Vector oracle_moment(const DataMatrix& u, const std::vector<double>& depth, int b, bool center_out) {
  const auto n = depth.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto c) { return depth[a] < depth[c]; });
  std::vector<std::vector<std::size_t>> shells(static_cast<std::size_t>(b));
  for (std::size_t r = 0; r < n; ++r) {
    int a = static_cast<int>(std::ceil(static_cast<double>(r + 1) * b / static_cast<double>(n))) - 1;
    if (center_out) a = b - 1 - a;
    shells[static_cast<std::size_t>(a)].push_back(order[r]);
  }
  Vector total = Vector::Zero(u.d());
  for (int a = 0; a < b; ++a) {
    for (Eigen::Index j = 0; j < u.d(); ++j) {
      std::vector<double> col;
      for (auto i : shells[static_cast<std::size_t>(a)]) col.push_back(u(static_cast<Eigen::Index>(i), j));
      std::sort(col.begin(), col.end());
      const auto m = col.size();
      const double med = m % 2 ? col[m / 2] : 0.5 * (col[m / 2 - 1] + col[m / 2]);
      total(j) += (a % 2 == 0 ? -1.0 : 1.0) * med;
    }
  }
  return total;
}

double angle_to_diagonal(const Vector& v) {
  return std::acos(std::clamp(v.normalized().dot(Vector::Ones(2).normalized()), -1.0, 1.0)) * 180.0 /
         std::numbers::pi;
}

}  // namespace

TEST_SUITE("vmoments") {

TEST_CASE("moments agree with an independent recomputation") {
  testgen::Gen g(51);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = testgen::integer(g, 1, 4);
    const DataMatrix x = testgen::skewed(g, testgen::integer(g, 6, 150), d);
    for (auto order : {ShellOrder::center_out, ShellOrder::depth_ascending}) {
      MomentOptions o;
      o.b_max = 4;
      o.shell_order = order;
      const VMedadReport r = full_report(x, o);
      const DataMatrix u = center(x, r.phi1);
      for (int b = 2; b <= 4; ++b) {
        const Vector want = oracle_moment(u, r.depths, b, order == ShellOrder::center_out);
        CHECK(testgen::max_abs(r.phi.at(b + 1) - want) <= 1e-14 * (1 + want.norm()));
      }
    }
  }
}

TEST_CASE("b = 2 is the difference of the two shell medians") {
  testgen::Gen g(52);
  const DataMatrix x = testgen::skewed(g, 41, 2);
  const VMedadReport r = full_report(x);
  const DataMatrix u = center(x, r.phi1);
  const auto p = assign_shells(r.depths, 2, ShellOrder::center_out);
  const auto meds = shell_medians(u, p);
  CHECK(skewness_vector(u, p) == meds[1] - meds[0]);
  CHECK(r.phi.at(3) == meds[1] - meds[0]);
  const auto p3 = assign_shells(r.depths, 3, ShellOrder::center_out);
  const auto m3 = shell_medians(u, p3);
  CHECK(peripheral_vector(u, p3) == -m3[0] + m3[1] - m3[2]);
  CHECK_THROWS_WITH_AS(vector_moment(u, p3, 2), doctest::Contains("shell count mismatch"), Error);
}

TEST_CASE("property: exactly paired samples give zero odd and alternating moments") {
  testgen::Gen g(53);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = testgen::integer(g, 1, 4);
    const DataMatrix x = testgen::paired(g, 6 * testgen::integer(g, 1, 20), d);  // n multiple of 12
    for (auto scatter : {DepthScatter::moment, DepthScatter::none}) {
      MomentOptions o;
      o.depth_scatter = scatter;
      const VMedadReport r = full_report(x, o);
      CHECK(r.phi1.norm() <= 1e-12);
      CHECK(r.phi.at(3).norm() <= 1e-9);
      CHECK(r.phi.at(4).norm() <= 1e-9);
      CHECK(r.phi2_vec.norm() <= 1e-9);
    }
  }
}

TEST_CASE("property: scale and norm relations") {
  testgen::Gen g(54);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = testgen::integer(g, 1, 4);
    const DataMatrix x = testgen::skewed(g, testgen::integer(g, 6, 100), d);
    MomentOptions o;
    o.b_max = testgen::integer(g, 2, 5);
    const VMedadReport r = full_report(x, o);
    REQUIRE(r.psi_defined());
    CHECK(r.psi.size() == static_cast<std::size_t>(o.b_max));
    for (const auto& [k, phi] : r.phi) {
      // Psi_k * scale reconstructs Phi_k to the last bit or one rounding of it
      for (Eigen::Index j = 0; j < d; ++j) CHECK(testgen::within_ulps(r.psi.at(k)(j) * r.phi2_scale, phi(j), 2));
      CHECK(r.psi.at(k) == phi / r.phi2_scale);
      CHECK(testgen::within_ulps(r.norms.at(k) * r.norms.at(k), phi.squaredNorm(), 4));
      CHECK(r.norms.at(k) == phi.norm());
    }
    CHECK(r.norms.at(2) == r.phi2_vec.norm());
    CHECK(r.c_med_trace == r.c_med.trace());
    if (r.psi2_direction) CHECK(r.psi2_direction->norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("property: reflection flips every Phi_k exactly") {
  testgen::Gen g(55);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = testgen::integer(g, 1, 4);
    const DataMatrix x = testgen::skewed(g, testgen::integer(g, 6, 120), d);
    const VMedadReport a = full_report(x);
    const VMedadReport b = full_report(x.transformed(-Eigen::MatrixXd::Identity(d, d), Vector::Zero(d)));
    CHECK(b.phi.at(3) == -a.phi.at(3));
    CHECK(b.phi.at(4) == -a.phi.at(4));
    CHECK(b.phi2_scale == a.phi2_scale);
  }
}

TEST_CASE("property: translation moves only Phi_1") {
  testgen::Gen g(56);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = testgen::integer(g, 1, 4);
    const DataMatrix x = testgen::gaussian(g, testgen::integer(g, 6, 120), d);
    const Vector t = testgen::random_vector(g, d, 20);
    const VMedadReport a = full_report(x);
    const VMedadReport b = full_report(x.transformed(Eigen::MatrixXd::Identity(d, d), t));
    CHECK((b.phi1 - (a.phi1 + t)).norm() <= 1e-12 * (1 + t.norm()));
    for (const auto& [k, phi] : a.phi) CHECK((b.phi.at(k) - phi).norm() <= 1e-12 * (1 + t.norm()));
    CHECK(std::abs(b.phi2_scale - a.phi2_scale) <= 1e-12 * (1 + t.norm()));
  }
}

TEST_CASE("property: exact-subgroup equivariance") {
  testgen::Gen g(57);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = testgen::integer(g, 2, 4);
    const DataMatrix x = testgen::skewed(g, testgen::integer(g, 10, 120), d);
    const Eigen::MatrixXd q = testgen::signed_permutation(g, d);
    const double c = testgen::uniform(g, 0.3, 4) * (testgen::integer(g, 0, 1) ? 1 : -1);
    const Vector t = testgen::random_vector(g, d, 10);
    const VMedadReport a = full_report(x);
    const VMedadReport b = full_report(x.transformed(c * q, t));
    CHECK((b.phi1 - (c * q * a.phi1 + t)).cwiseAbs().maxCoeff() <= 1e-9);
    for (const auto& [k, phi] : a.phi) CHECK((b.phi.at(k) - c * q * phi).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(std::abs(b.phi2_scale - std::abs(c) * a.phi2_scale) <= 1e-9);
    for (const auto& [k, psi] : a.psi) {
      CHECK(std::abs(b.psi_norms.at(k) - a.psi_norms.at(k)) <= 1e-9);
      CHECK((b.psi.at(k) - (c < 0 ? -1.0 : 1.0) * q * psi).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("boundary and degenerate inputs") {
  MomentOptions o;
  o.b_max = 3;
  const VMedadReport tiny = full_report(DataMatrix::from_rows({{0, 0}, {1, 0.5}, {3, 2}}), o);
  CHECK(tiny.phi.size() == 2);

  const VMedadReport flat = full_report(DataMatrix::from_rows({{1, 2}, {1, 2}, {1, 2}, {1, 2}}));
  CHECK(flat.phi2_scale == 0.0);
  CHECK_FALSE(flat.psi_defined());
  CHECK(flat.psi.empty());
  CHECK_FALSE(flat.psi2_direction.has_value());

  CHECK_THROWS_AS(full_report(DataMatrix::from_rows({{0, 0}, {1, 1}}), o), Error);
  o.b_max = 1;
  CHECK_THROWS_AS(full_report(DataMatrix::from_rows({{0, 0}, {1, 1}, {2, 0}}), o), Error);
}

TEST_CASE("standardized") {
  CHECK(standardized(Vector::Zero(3), 2.5).isZero(0.0));
  CHECK_THROWS_WITH_AS(standardized(Vector::Ones(2), 0.0), "degenerate scale", Error);
  CHECK_THROWS_AS(standardized(Vector::Ones(2), -1.0), Error);
}

TEST_CASE("Phi_3 points toward the minority cluster of the two-cluster mixture") {
  const auto s = sample_mixture(500, MixtureSpec::two_cluster_example(), 7);
  const VMedadReport r = full_report(s);
  CHECK(angle_to_diagonal(r.phi.at(3)) < 15.0);
  CHECK((r.phi1 - Vector::Constant(2, 50)).norm() < (r.phi1 - Vector::Constant(2, 80)).norm());
  // the depth_ascending convention points the other way
  MomentOptions asc;
  asc.shell_order = ShellOrder::depth_ascending;
  CHECK(angle_to_diagonal(full_report(s, asc).phi.at(3)) > 165.0);
}

TEST_CASE("large elliptical samples have small shell moments") {
  const auto x = sample_mvt(8000, Vector::Zero(2), Eigen::MatrixXd::Identity(2, 2), 4.0, 99);
  const VMedadReport r = full_report(x);
  const DataMatrix u = center(x, r.phi1);
  const auto p3 = assign_shells(r.depths, 3, ShellOrder::center_out);
  double largest = 0;
  for (const auto& m : shell_medians(u, p3)) largest = std::max(largest, m.norm());
  CHECK(r.norms.at(4) < 0.25 * std::max(largest, r.phi2_scale));
  CHECK(r.norms.at(3) < 0.1);
}

}  // TEST_SUITE

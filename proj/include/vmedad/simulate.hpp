#pragma once

// Seeded samplers and the Monte Carlo experiments for consistency,
// breakdown, equivariance, and the two-cluster mixture example.

#include "vmedad/refdist.hpp"
#include "vmedad/types.hpp"
#include "vmedad/vmoments.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vmedad {

/// n draws of mean + L g with L the Cholesky factor of covariance.
DataMatrix sample_mvn(Eigen::Index n, const Vector& mean, const Eigen::MatrixXd& covariance,
                      std::uint64_t seed, std::uint64_t stream = 0);

/// n draws of mean + L y / sqrt(w / nu), y ~ N(0, I), w ~ chi-square(nu)
/// drawn as 2 * Gamma(nu / 2) for every nu.
DataMatrix sample_mvt(Eigen::Index n, const Vector& mean, const Eigen::MatrixXd& covariance, double nu,
                      std::uint64_t seed, std::uint64_t stream = 0);

struct MixtureComponent {
  double weight = 1.0;
  Vector mean;
  Eigen::MatrixXd covariance;
};

struct MixtureSpec {
  std::vector<MixtureComponent> components;

  void validate() const;
  /// 0.70 N2((50,50), 36 I) + 0.30 N2((80,80), 9 I).
  static MixtureSpec two_cluster_example();
};

struct MixtureSample {
  DataMatrix data;
  std::vector<int> component;
};

MixtureSample sample_mixture_labeled(Eigen::Index n, const MixtureSpec& spec, std::uint64_t seed,
                                     std::uint64_t stream = 0);
DataMatrix sample_mixture(Eigen::Index n, const MixtureSpec& spec, std::uint64_t seed,
                          std::uint64_t stream = 0);

struct Contamination {
  DataMatrix data;
  std::vector<std::size_t> replaced;  ///< ascending row indices
};

/// Replaces floor(epsilon * n) rows, drawn without replacement, by
/// M(X) + magnitude * direction + N(0, (1e-6 * magnitude)^2 I) jitter, where
/// M is the spatial median. direction defaults to (1, ..., 1) / sqrt(d).
Contamination contaminate(const DataMatrix& x, double epsilon, double magnitude,
                          const std::optional<Vector>& direction, std::uint64_t seed,
                          std::uint64_t stream = 0);

/// Standardized elliptical design: N_d(0, I) or t_d(0, I, nu).
struct EllipticalDesign {
  Family family = Family::normal;
  int d = 2;
  double nu = 0.0;

  DataMatrix draw(Eigen::Index n, std::uint64_t seed, std::uint64_t stream) const;
  ReferenceValues reference() const;
  std::string describe() const;
};

struct MetricSummary {
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
};

/// Per-replicate metric table grouped by design point (e.g. "n=500").
struct ExperimentResult {
  std::map<std::string, std::string> design;
  int replicates = 0;
  std::vector<std::string> groups;
  std::vector<std::string> metric_names;

  struct Row {
    std::string group;
    int replicate = 0;
    std::vector<double> values;
  };
  std::vector<Row> rows;
  std::map<std::string, std::map<std::string, MetricSummary>> summary;
  std::vector<std::string> notes;

  std::vector<double> column(const std::string& group, const std::string& metric) const;
  void summarize();
  /// "group,replicate,<metric...>" then one line per row.
  void write_csv(std::ostream& os) const;
};

ExperimentResult run_consistency(const EllipticalDesign& design, const std::vector<Eigen::Index>& n_grid,
                                 int replicates, std::uint64_t seed, const MomentOptions& opts = {});

struct BreakdownConfig {
  Eigen::Index n = 2000;
  std::vector<double> epsilon_grid{0.0, 0.1};
  double magnitude = 1e6;
  int replicates = 20;
  std::optional<Vector> direction;
};

ExperimentResult run_breakdown(const EllipticalDesign& design, const BreakdownConfig& config,
                               std::uint64_t seed, const MomentOptions& opts = {});

/// Exact-group identities (translation + signed permutation + uniform scale)
/// under group "exact"; deviations under random full affine maps are logged
/// under group "affine" and never asserted.
ExperimentResult run_equivariance_check(const DataMatrix& x, int trials, std::uint64_t seed,
                                        const MomentOptions& opts = {});

struct Figure1Result {
  DataMatrix data;
  std::vector<int> component;
  std::vector<int> shell;  ///< two-shell assignment under the configured order
  Vector median;
  Vector phi3;
  Vector phi4;
  Vector gamma2;
};

Figure1Result run_figure1(std::uint64_t seed, const MomentOptions& opts = {}, Eigen::Index n = 500);

/// "x1,x2,shell" scatter, a blank line, then
/// "arrow,origin_x1,origin_x2,dx1,dx2" rows for phi3, phi4 and gamma2.
void write_figure1_csv(std::ostream& os, const Figure1Result& fig);

/// Angle in degrees between two nonzero vectors.
double angle_degrees(const Vector& a, const Vector& b);

}  // namespace vmedad

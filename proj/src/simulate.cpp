#include "vmedad/simulate.hpp"

#include "vmedad/baselines.hpp"
#include "vmedad/geometry.hpp"
#include "vmedad/random.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

namespace vmedad {

namespace {

Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& covariance) {
  if (covariance.rows() != covariance.cols()) throw Error("covariance not positive-definite");
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success) throw Error("covariance not positive-definite");
  return llt.matrixL();
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Runs body(i) for i in [0, count) across threads; rethrows the first error.
template <typename Body>
void parallel_for(int count, Body body) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(vmedad_parallel_for)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

DataMatrix sample_mvn(Eigen::Index n, const Vector& mean, const Eigen::MatrixXd& covariance,
                      std::uint64_t seed, std::uint64_t stream) {
  if (n < 1) throw Error("sample size must be positive");
  const Eigen::MatrixXd l = cholesky_factor(covariance);
  const Eigen::Index d = mean.size();
  if (l.rows() != d) throw Error("mean and covariance dimensions differ");
  Rng rng(seed, stream);
  Matrix out(n, d);
  Vector g(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) g(k) = rng.normal();
    out.row(i) = (mean + l * g).transpose();
  }
  return DataMatrix(std::move(out));
}

DataMatrix sample_mvt(Eigen::Index n, const Vector& mean, const Eigen::MatrixXd& covariance, double nu,
                      std::uint64_t seed, std::uint64_t stream) {
  if (n < 1) throw Error("sample size must be positive");
  if (!(nu > 0.0)) throw Error("degrees of freedom must be positive");
  const Eigen::MatrixXd l = cholesky_factor(covariance);
  const Eigen::Index d = mean.size();
  if (l.rows() != d) throw Error("mean and covariance dimensions differ");
  Rng rng(seed, stream);
  Matrix out(n, d);
  Vector y(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) y(k) = rng.normal();
    const double w = rng.chi_square(nu);
    out.row(i) = (mean + l * (y / std::sqrt(w / nu))).transpose();
  }
  return DataMatrix(std::move(out));
}

void MixtureSpec::validate() const {
  if (components.empty()) throw Error("mixture has no components");
  double total = 0.0;
  const Eigen::Index d = components.front().mean.size();
  for (const auto& c : components) {
    if (!(c.weight > 0.0 && c.weight <= 1.0)) throw Error("mixture weight outside (0, 1]");
    if (c.mean.size() != d) throw Error("mixture components differ in dimension");
    cholesky_factor(c.covariance);
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error("mixture weights must sum to 1");
}

MixtureSpec MixtureSpec::two_cluster_example() {
  MixtureSpec spec;
  spec.components.push_back({0.70, Vector::Constant(2, 50.0), 36.0 * Eigen::MatrixXd::Identity(2, 2)});
  spec.components.push_back({0.30, Vector::Constant(2, 80.0), 9.0 * Eigen::MatrixXd::Identity(2, 2)});
  return spec;
}

MixtureSample sample_mixture_labeled(Eigen::Index n, const MixtureSpec& spec, std::uint64_t seed,
                                     std::uint64_t stream) {
  spec.validate();
  if (n < 1) throw Error("sample size must be positive");
  std::vector<Eigen::MatrixXd> factors;
  for (const auto& c : spec.components) factors.push_back(cholesky_factor(c.covariance));
  const Eigen::Index d = spec.components.front().mean.size();
  Rng rng(seed, stream);
  Matrix out(n, d);
  std::vector<int> labels(static_cast<std::size_t>(n));
  Vector g(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = rng.uniform();
    std::size_t k = 0;
    double cumulative = spec.components[0].weight;
    while (u >= cumulative && k + 1 < spec.components.size()) cumulative += spec.components[++k].weight;
    for (Eigen::Index j = 0; j < d; ++j) g(j) = rng.normal();
    out.row(i) = (spec.components[k].mean + factors[k] * g).transpose();
    labels[static_cast<std::size_t>(i)] = static_cast<int>(k);
  }
  return {DataMatrix(std::move(out)), std::move(labels)};
}

DataMatrix sample_mixture(Eigen::Index n, const MixtureSpec& spec, std::uint64_t seed, std::uint64_t stream) {
  return sample_mixture_labeled(n, spec, seed, stream).data;
}

Contamination contaminate(const DataMatrix& x, double epsilon, double magnitude,
                          const std::optional<Vector>& direction, std::uint64_t seed, std::uint64_t stream) {
  if (!(epsilon >= 0.0 && epsilon < 0.5)) throw Error("contamination fraction must be in [0, 0.5)");
  const Eigen::Index n = x.n();
  const Eigen::Index d = x.d();
  const auto count = static_cast<std::size_t>(std::floor(epsilon * static_cast<double>(n)));
  if (count == 0) return {x, {}};

  Vector dir = direction ? *direction : Vector::Ones(d);
  if (dir.size() != d || !(dir.norm() > 0.0)) throw Error("contamination direction must be a nonzero d-vector");
  dir.normalize();

  Rng rng(seed, stream);
  std::vector<std::size_t> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  std::vector<std::size_t> replaced(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(replaced.begin(), replaced.end());

  const Vector anchor = spatial_median(x).m + magnitude * dir;
  const double jitter = 1e-6 * magnitude;
  Matrix out = x.values();
  for (std::size_t i : replaced) {
    for (Eigen::Index k = 0; k < d; ++k) out(static_cast<Eigen::Index>(i), k) = anchor(k) + jitter * rng.normal();
  }
  return {DataMatrix(std::move(out)), std::move(replaced)};
}

DataMatrix EllipticalDesign::draw(Eigen::Index n, std::uint64_t seed, std::uint64_t stream) const {
  const Vector mean = Vector::Zero(d);
  const Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(d, d);
  if (family == Family::normal) return sample_mvn(n, mean, cov, seed, stream);
  return sample_mvt(n, mean, cov, nu, seed, stream);
}

ReferenceValues EllipticalDesign::reference() const {
  return family == Family::normal ? normal_reference(d) : t_reference(d, nu);
}

std::string EllipticalDesign::describe() const {
  std::ostringstream os;
  if (family == Family::normal) {
    os << "N_" << d << "(0, I)";
  } else {
    os << "t_" << d << "(0, I, nu=" << nu << ")";
  }
  return os.str();
}

std::vector<double> ExperimentResult::column(const std::string& group, const std::string& metric) const {
  const auto it = std::find(metric_names.begin(), metric_names.end(), metric);
  if (it == metric_names.end()) throw Error("unknown metric '" + metric + "'");
  const auto k = static_cast<std::size_t>(it - metric_names.begin());
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.group == group) out.push_back(r.values[k]);
  }
  return out;
}

void ExperimentResult::summarize() {
  summary.clear();
  for (const auto& g : groups) {
    for (const auto& m : metric_names) {
      auto col = column(g, m);
      // undefined entries (NaN) are left out of the aggregates
      std::erase_if(col, [](double v) { return std::isnan(v); });
      if (col.empty()) {
        summary[g][m] = {std::nan(""), std::nan(""), std::nan("")};
        continue;
      }
      MetricSummary s;
      s.mean = std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(col.size());
      s.median = median_of(col);
      s.max = *std::max_element(col.begin(), col.end());
      summary[g][m] = s;
    }
  }
}

void ExperimentResult::write_csv(std::ostream& os) const {
  os << "group,replicate";
  for (const auto& m : metric_names) os << ',' << m;
  os << '\n';
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& r : rows) {
    os << r.group << ',' << r.replicate;
    for (double v : r.values) os << ',' << v;
    os << '\n';
  }
  os.precision(old);
}

ExperimentResult run_consistency(const EllipticalDesign& design, const std::vector<Eigen::Index>& n_grid,
                                 int replicates, std::uint64_t seed, const MomentOptions& opts) {
  if (n_grid.empty() || replicates < 1) throw Error("consistency: empty design");
  if (!std::is_sorted(n_grid.begin(), n_grid.end())) throw Error("consistency: n_grid must be increasing");
  const ReferenceValues ref = design.reference();

  ExperimentResult res;
  res.design = {{"experiment", "consistency"},
                {"law", design.describe()},
                {"seed", std::to_string(seed)},
                {"b_max", std::to_string(opts.b_max)},
                {"shell_order", to_string(opts.shell_order)},
                {"depth_scatter", to_string(opts.depth_scatter)}};
  res.replicates = replicates;
  res.metric_names = {"phi2_scale_err", "c_med_diag_err", "phi2_vec_norm", "phi3_norm", "phi4_norm"};

  const auto groups = n_grid.size();
  res.rows.resize(groups * static_cast<std::size_t>(replicates));
  for (std::size_t g = 0; g < groups; ++g) res.groups.push_back("n=" + std::to_string(n_grid[g]));

  parallel_for(static_cast<int>(res.rows.size()), [&](int job) {
    const auto g = static_cast<std::size_t>(job) / static_cast<std::size_t>(replicates);
    const int r = job % replicates;
    const DataMatrix x = design.draw(n_grid[g], seed, g * 1000003ULL + static_cast<std::uint64_t>(r));
    const VMedadReport rep = full_report(x, opts);
    const Eigen::MatrixXd c_ref = ref.c_med_diag * Eigen::MatrixXd::Identity(design.d, design.d);
    ExperimentResult::Row row;
    row.group = res.groups[g];
    row.replicate = r;
    row.values = {std::abs(rep.phi2_scale - ref.phi2_scale), max_abs(rep.c_med - c_ref), rep.norms.at(2),
                  rep.phi.count(3) ? rep.norms.at(3) : std::nan(""),
                  rep.phi.count(4) ? rep.norms.at(4) : std::nan("")};
    res.rows[static_cast<std::size_t>(job)] = std::move(row);
  });
  res.summarize();
  return res;
}

ExperimentResult run_breakdown(const EllipticalDesign& design, const BreakdownConfig& config, std::uint64_t seed,
                               const MomentOptions& opts) {
  if (config.replicates < 1 || config.epsilon_grid.empty()) throw Error("breakdown: empty design");
  ExperimentResult res;
  res.design = {{"experiment", "breakdown"},
                {"law", design.describe()},
                {"n", std::to_string(config.n)},
                {"magnitude", format_double(config.magnitude)},
                {"seed", std::to_string(seed)},
                {"shell_order", to_string(opts.shell_order)},
                {"depth_scatter", to_string(opts.depth_scatter)}};
  res.replicates = config.replicates;
  res.metric_names = {"phi1_shift",       "phi1_shift_rel",   "phi2_scale_rel", "phi3_norm_clean",
                      "phi3_norm_cont",   "phi3_norm_rel",    "phi3_shift_scaled", "phi4_norm_rel",
                      "mardia_b1_clean",  "mardia_b1_cont",   "mardia_b1_ratio", "mardia_b2_ratio"};
  for (double eps : config.epsilon_grid) res.groups.push_back("eps=" + format_double(eps));

  const std::size_t per_rep = config.epsilon_grid.size();
  res.rows.resize(per_rep * static_cast<std::size_t>(config.replicates));

  parallel_for(config.replicates, [&](int r) {
    const DataMatrix clean = design.draw(config.n, seed, static_cast<std::uint64_t>(r));
    const VMedadReport base = full_report(clean, opts);
    const MardiaStats base_mardia = mardia(clean);
    for (std::size_t e = 0; e < per_rep; ++e) {
      const Contamination cont = contaminate(clean, config.epsilon_grid[e], config.magnitude, config.direction,
                                             seed ^ 0xC0117A111ULL, static_cast<std::uint64_t>(r) * 1009 + e);
      const VMedadReport rep = full_report(cont.data, opts);
      // Remote outliers can make the covariance numerically singular; Mardia is then undefined.
      MardiaStats m{std::nan(""), std::nan("")};
      try {
        m = mardia(cont.data);
      } catch (const Error&) {
      }
      const double shift = (rep.phi1 - base.phi1).norm();
      const double n3c = base.norms.at(3);
      const double n3 = rep.norms.at(3);
      const double n4c = base.norms.count(4) ? base.norms.at(4) : std::nan("");
      const double n4 = rep.norms.count(4) ? rep.norms.at(4) : std::nan("");
      ExperimentResult::Row row;
      row.group = res.groups[e];
      row.replicate = r;
      row.values = {shift,
                    shift / base.phi2_scale,
                    std::abs(rep.phi2_scale - base.phi2_scale) / base.phi2_scale,
                    n3c,
                    n3,
                    std::abs(n3 - n3c) / n3c,
                    (rep.phi.at(3) - base.phi.at(3)).norm() / base.phi2_scale,
                    std::abs(n4 - n4c) / n4c,
                    base_mardia.skewness,
                    m.skewness,
                    m.skewness / base_mardia.skewness,
                    m.kurtosis / base_mardia.kurtosis};
      res.rows[static_cast<std::size_t>(r) * per_rep + e] = std::move(row);
    }
  });
  res.summarize();
  return res;
}

ExperimentResult run_equivariance_check(const DataMatrix& x, int trials, std::uint64_t seed,
                                        const MomentOptions& opts) {
  const Eigen::Index d = x.d();
  const VMedadReport base = full_report(x, opts);
  if (!base.psi_defined()) throw Error("equivariance check needs nondegenerate data");

  ExperimentResult res;
  res.design = {{"experiment", "equivariance"},
                {"n", std::to_string(x.n())},
                {"d", std::to_string(d)},
                {"trials", std::to_string(trials)},
                {"seed", std::to_string(seed)},
                {"depth_scatter", to_string(opts.depth_scatter)}};
  res.replicates = trials;
  res.groups = {"exact", "affine"};
  res.metric_names = {"phi1_dev", "phi2_vec_dev", "phi_k_dev", "phi2_scale_dev",
                      "c_med_dev", "psi_k_dev", "psi_norm_dev", "max_violation"};
  res.rows.resize(2 * static_cast<std::size_t>(trials));

  parallel_for(trials, [&](int t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));

    // translation + signed permutation + uniform scale
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) q(i, perm[static_cast<std::size_t>(i)]) = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const double c = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.5 + 2.5 * rng.uniform());
    Vector shift(d);
    for (Eigen::Index k = 0; k < d; ++k) shift(k) = 20.0 * rng.uniform() - 10.0;
    const Eigen::MatrixXd a = c * q;

    const VMedadReport rep = full_report(x.transformed(a, shift), opts);
    std::vector<double> v(res.metric_names.size(), 0.0);
    v[0] = max_abs(rep.phi1 - (a * base.phi1 + shift));
    v[1] = max_abs(rep.phi2_vec - a * base.phi2_vec);
    for (const auto& [k, phi] : base.phi) v[2] = std::max(v[2], max_abs(rep.phi.at(k) - a * phi));
    v[3] = std::abs(rep.phi2_scale - std::abs(c) * base.phi2_scale);
    v[4] = max_abs(rep.c_med - c * c * q * base.c_med * q.transpose());
    const double sgn = c < 0.0 ? -1.0 : 1.0;
    for (const auto& [k, psi] : base.psi) {
      v[5] = std::max(v[5], max_abs(rep.psi.at(k) - sgn * q * psi));
      v[6] = std::max(v[6], std::abs(rep.psi_norms.at(k) - base.psi_norms.at(k)));
    }
    v[7] = *std::max_element(v.begin(), v.end() - 1);
    res.rows[static_cast<std::size_t>(t)] = {"exact", t, v};

    // generic affine map: relative deviations, logged only
    Eigen::MatrixXd g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.normal();
    const VMedadReport aff = full_report(x.transformed(g, shift), opts);
    std::vector<double> w(res.metric_names.size(), 0.0);
    auto rel = [](const Vector& got, const Vector& want) {
      return (got - want).norm() / std::max(want.norm(), 1e-300);
    };
    w[0] = rel(aff.phi1, g * base.phi1 + shift);
    w[1] = (aff.phi2_vec - g * base.phi2_vec).norm() / aff.phi2_scale;
    for (const auto& [k, phi] : base.phi) w[2] = std::max(w[2], rel(aff.phi.at(k), g * phi));
    w[3] = std::abs(aff.phi2_scale - base.phi2_scale) / base.phi2_scale;
    w[4] = max_abs(aff.c_med - g * base.c_med * g.transpose()) / std::max(max_abs(aff.c_med), 1e-300);
    for (const auto& [k, psi] : base.psi) {
      w[5] = std::max(w[5], (aff.psi.at(k) - psi).norm());
      w[6] = std::max(w[6], std::abs(aff.psi_norms.at(k) - base.psi_norms.at(k)));
    }
    w[7] = *std::max_element(w.begin(), w.end() - 1);
    res.rows[static_cast<std::size_t>(trials + t)] = {"affine", t, w};
  });
  res.notes.push_back("group 'exact': absolute deviations under c*Q*x + t (Q signed permutation); asserted <= 1e-9");
  res.notes.push_back(
      "group 'affine': relative deviations under a random Gaussian matrix; phi2_scale_dev and psi_*_dev compare "
      "against the untransformed values (the claimed affine invariance); reported only");
  res.summarize();
  return res;
}

Figure1Result run_figure1(std::uint64_t seed, const MomentOptions& opts, Eigen::Index n) {
  MixtureSample s = sample_mixture_labeled(n, MixtureSpec::two_cluster_example(), seed);
  const VMedadReport rep = full_report(s.data, opts);
  const DepthProfile two = assign_shells(rep.depths, 2, opts.shell_order);
  return {s.data,
          std::move(s.component),
          two.shell_of,
          rep.phi1,
          rep.phi.at(3),
          rep.phi.count(4) ? rep.phi.at(4) : Vector::Zero(s.data.d()),
          mrsz_skew(s.data)};
}

void write_figure1_csv(std::ostream& os, const Figure1Result& fig) {
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  os << "x1,x2,shell\n";
  for (Eigen::Index i = 0; i < fig.data.n(); ++i) {
    os << fig.data(i, 0) << ',' << fig.data(i, 1) << ',' << fig.shell[static_cast<std::size_t>(i)] << '\n';
  }
  os << "\narrow,origin_x1,origin_x2,dx1,dx2\n";
  auto arrow = [&](const char* name, const Vector& v) {
    os << name << ',' << fig.median(0) << ',' << fig.median(1) << ',' << v(0) << ',' << v(1) << '\n';
  };
  arrow("phi3", fig.phi3);
  arrow("phi4", fig.phi4);
  arrow("gamma2", fig.gamma2);
  os.precision(old);
}

double angle_degrees(const Vector& a, const Vector& b) {
  const double denom = a.norm() * b.norm();
  if (!(denom > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  const double cosine = std::clamp(a.dot(b) / denom, -1.0, 1.0);
  return std::acos(cosine) * 180.0 / std::numbers::pi;
}

}  // namespace vmedad

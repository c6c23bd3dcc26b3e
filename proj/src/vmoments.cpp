#include "vmedad/vmoments.hpp"

#include "vmedad/medstats.hpp"

#include <cmath>

namespace vmedad {

std::vector<Vector> shell_medians(const DataMatrix& u, const DepthProfile& profile) {
  if (profile.n() != static_cast<std::size_t>(u.n())) {
    throw Error("depth profile and data disagree on n");
  }
  const Eigen::Index d = u.d();
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(profile.b));
  for (std::size_t i = 0; i < profile.shell_of.size(); ++i) {
    members[static_cast<std::size_t>(profile.shell_of[i])].push_back(i);
  }
  std::vector<Vector> out;
  out.reserve(members.size());
  std::vector<double> buf;
  for (const auto& shell : members) {
    if (shell.empty()) throw Error("empty depth shell");
    Vector med(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      buf.clear();
      for (std::size_t i : shell) buf.push_back(u(static_cast<Eigen::Index>(i), j));
      med(j) = median(buf);
    }
    out.push_back(std::move(med));
  }
  return out;
}

Vector vector_moment(const DataMatrix& u, const DepthProfile& profile, int b) {
  if (profile.b != b) {
    throw Error("shell count mismatch: profile has " + std::to_string(profile.b) + ", expected " +
                std::to_string(b));
  }
  const auto medians = shell_medians(u, profile);
  Vector total = Vector::Zero(u.d());
  for (std::size_t a = 0; a < medians.size(); ++a) {
    if (a % 2 == 0) {
      total -= medians[a];
    } else {
      total += medians[a];
    }
  }
  return total;
}

Vector skewness_vector(const DataMatrix& u, const DepthProfile& profile_b2) {
  return vector_moment(u, profile_b2, 2);
}

Vector peripheral_vector(const DataMatrix& u, const DepthProfile& profile_b3) {
  return vector_moment(u, profile_b3, 3);
}

Vector standardized(const Vector& phi_k, double scale) {
  if (!(scale > 0.0)) throw Error("degenerate scale");
  return phi_k / scale;
}

VMedadReport full_report(const DataMatrix& x, const MomentOptions& opts) {
  if (opts.b_max < 2) throw Error("b_max must be at least 2");
  if (x.n() < opts.b_max || x.n() < 2) {
    throw Error("too few observations for b_max = " + std::to_string(opts.b_max));
  }

  VMedadReport r;
  r.n = x.n();
  r.d = x.d();
  r.b_max = opts.b_max;
  r.shell_order = opts.shell_order;
  r.depth_scatter = opts.depth_scatter;

  r.center = spatial_median(x, opts.median);
  r.phi1 = r.center.m;
  const DataMatrix u = center(x, r.phi1);
  r.phi2_vec = coordwise_median(u);
  r.phi2_scale = medad_scale(u);
  r.c_med = comedian_matrix(u);
  r.c_med_trace = r.c_med.trace();

  DepthValues dv = depth_values(x, opts.depth_scatter);
  r.depth_standardized = dv.standardized;
  r.depths = std::move(dv.depths);

  for (int b = 2; b <= opts.b_max; ++b) {
    const DepthProfile profile = assign_shells(r.depths, b, opts.shell_order);
    r.phi[b + 1] = vector_moment(u, profile, b);
  }

  r.norms[2] = r.phi2_vec.norm();
  for (const auto& [k, v] : r.phi) r.norms[k] = v.norm();

  if (r.psi_defined()) {
    r.psi[2] = standardized(r.phi2_vec, r.phi2_scale);
    for (const auto& [k, v] : r.phi) r.psi[k] = standardized(v, r.phi2_scale);
    for (const auto& [k, v] : r.psi) r.psi_norms[k] = v.norm();
    if (r.norms[2] > 1e-8 * r.phi2_scale) r.psi2_direction = r.phi2_vec / r.norms[2];
  }
  return r;
}

}  // namespace vmedad

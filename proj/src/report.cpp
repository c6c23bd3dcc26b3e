#include "vmedad/report.hpp"

#include "vmedad/geometry.hpp"

namespace vmedad {

using nlohmann::json;

namespace {

json vec_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vec_from(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

json mat_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vec_json(m.row(i).transpose()));
  return out;
}

Eigen::MatrixXd mat_from(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) m.row(i) = vec_from(j[static_cast<std::size_t>(i)]).transpose();
  return m;
}

json vmedad_json(const VMedadReport& r) {
  json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["b_max"] = r.b_max;
  j["shell_order"] = to_string(r.shell_order);
  j["depth_scatter"] = to_string(r.depth_scatter);
  j["depth_standardized"] = r.depth_standardized;
  j["phi1"] = vec_json(r.phi1);
  j["center"] = {{"iterations", r.center.iterations},
                 {"polish_iterations", r.center.polish_iterations},
                 {"converged", r.center.converged},
                 {"final_step", r.center.final_step},
                 {"objective_trace", r.center.objective_trace}};
  j["phi2_vec"] = vec_json(r.phi2_vec);
  j["phi2_scale"] = r.phi2_scale;
  j["c_med"] = mat_json(r.c_med);
  j["c_med_trace"] = r.c_med_trace;

  json phi = json::object();
  for (const auto& [k, v] : r.phi) phi[std::to_string(k)] = vec_json(v);
  j["phi"] = phi;

  json norms = json::object();
  for (const auto& [k, v] : r.norms) norms[std::to_string(k)] = v;
  j["norms"] = norms;

  // Psi is undefined when the scale is zero; every order is then null.
  json psi = json::object();
  json psi_norms = json::object();
  for (int k = 2; k <= r.b_max + 1; ++k) {
    const auto key = std::to_string(k);
    const auto it = r.psi.find(k);
    psi[key] = it == r.psi.end() ? json(nullptr) : vec_json(it->second);
    const auto nt = r.psi_norms.find(k);
    psi_norms[key] = nt == r.psi_norms.end() ? json(nullptr) : json(nt->second);
  }
  j["psi"] = psi;
  j["psi_norms"] = psi_norms;
  j["psi2_direction"] = r.psi2_direction ? vec_json(*r.psi2_direction) : json(nullptr);
  j["depths"] = r.depths;
  return j;
}

VMedadReport vmedad_from(const json& j) {
  VMedadReport r;
  r.n = j.at("n").get<Eigen::Index>();
  r.d = j.at("d").get<Eigen::Index>();
  r.b_max = j.at("b_max").get<int>();
  r.shell_order = parse_shell_order(j.at("shell_order").get<std::string>());
  r.depth_scatter = parse_depth_scatter(j.at("depth_scatter").get<std::string>());
  r.depth_standardized = j.at("depth_standardized").get<bool>();
  r.phi1 = vec_from(j.at("phi1"));
  const auto& c = j.at("center");
  r.center.m = r.phi1;
  r.center.iterations = c.at("iterations").get<int>();
  r.center.polish_iterations = c.at("polish_iterations").get<int>();
  r.center.converged = c.at("converged").get<bool>();
  r.center.final_step = c.at("final_step").get<double>();
  r.center.objective_trace = c.at("objective_trace").get<std::vector<double>>();
  r.phi2_vec = vec_from(j.at("phi2_vec"));
  r.phi2_scale = j.at("phi2_scale").get<double>();
  r.c_med = mat_from(j.at("c_med"));
  r.c_med_trace = j.at("c_med_trace").get<double>();
  for (const auto& [k, v] : j.at("phi").items()) r.phi[std::stoi(k)] = vec_from(v);
  for (const auto& [k, v] : j.at("norms").items()) r.norms[std::stoi(k)] = v.get<double>();
  for (const auto& [k, v] : j.at("psi").items()) {
    if (!v.is_null()) r.psi[std::stoi(k)] = vec_from(v);
  }
  for (const auto& [k, v] : j.at("psi_norms").items()) {
    if (!v.is_null()) r.psi_norms[std::stoi(k)] = v.get<double>();
  }
  if (!j.at("psi2_direction").is_null()) r.psi2_direction = vec_from(j.at("psi2_direction"));
  r.depths = j.at("depths").get<std::vector<double>>();
  return r;
}

json baselines_json(const BaselineReport& b) {
  return {{"divisor", to_string(b.divisor)},
          {"mardia", {{"skewness", b.mardia.skewness}, {"kurtosis", b.mardia.kurtosis}}},
          {"mrsz_skew", vec_json(b.mrsz_skew)},
          {"mrsz_kurt", {{"raw", mat_json(b.mrsz_kurt.raw)}, {"centered", mat_json(b.mrsz_kurt.centered)}}}};
}

BaselineReport baselines_from(const json& j) {
  BaselineReport b;
  b.divisor = parse_covariance_divisor(j.at("divisor").get<std::string>());
  b.mardia.skewness = j.at("mardia").at("skewness").get<double>();
  b.mardia.kurtosis = j.at("mardia").at("kurtosis").get<double>();
  b.mrsz_skew = vec_from(j.at("mrsz_skew"));
  b.mrsz_kurt.raw = mat_from(j.at("mrsz_kurt").at("raw"));
  b.mrsz_kurt.centered = mat_from(j.at("mrsz_kurt").at("centered"));
  return b;
}

}  // namespace

std::vector<ShellDiagnostics> shell_diagnostics(const DataMatrix& x, const VMedadReport& report) {
  const DataMatrix u = center(x, report.phi1);
  std::vector<ShellDiagnostics> out;
  for (ShellOrder order : {ShellOrder::center_out, ShellOrder::depth_ascending}) {
    for (int b = 2; b <= report.b_max; ++b) {
      const DepthProfile profile = assign_shells(report.depths, b, order);
      out.push_back({order, b, profile.shell_sizes(), shell_medians(u, profile)});
    }
  }
  return out;
}

ReportDocument analyze(const DataMatrix& x, std::vector<std::string> column_names, const ReportConfig& config) {
  if (config.b_max < 2) throw Error("b_max must be at least 2");
  if (column_names.size() != static_cast<std::size_t>(x.d())) {
    throw Error("column name count does not match the data");
  }
  ReportDocument doc;
  doc.n = x.n();
  doc.d = x.d();
  doc.column_names = std::move(column_names);
  doc.config = config;

  MomentOptions opts;
  opts.b_max = config.b_max;
  opts.shell_order = config.shell_order;
  opts.depth_scatter = config.depth_scatter;
  doc.vmedad = full_report(x, opts);
  doc.shell_diagnostics = shell_diagnostics(x, doc.vmedad);

  if (config.emit_baselines && x.n() > x.d()) {
    try {
      doc.baselines = baseline_report(x);
    } catch (const Error&) {
      doc.baselines.reset();
    }
  }
  return doc;
}

json to_json(const ReportDocument& doc) {
  json j;
  j["schema"] = kReportSchema;
  json config = {{"b_max", doc.config.b_max},
                 {"shell_order", to_string(doc.config.shell_order)},
                 {"depth_scatter", to_string(doc.config.depth_scatter)},
                 {"emit_baselines", doc.config.emit_baselines},
                 {"seed", doc.config.seed ? json(*doc.config.seed) : json(nullptr)}};
  j["metadata"] = {{"n", doc.n},
                   {"d", doc.d},
                   {"columns", doc.column_names},
                   {"config", config},
                   {"tool_version", doc.tool_version}};
  j["vmedad"] = vmedad_json(doc.vmedad);
  j["baselines"] = doc.baselines ? baselines_json(*doc.baselines) : json(nullptr);

  json diag = json::array();
  for (const auto& s : doc.shell_diagnostics) {
    json medians = json::array();
    for (const auto& m : s.medians) medians.push_back(vec_json(m));
    diag.push_back({{"order", to_string(s.order)}, {"b", s.b}, {"sizes", s.sizes}, {"medians", medians}});
  }
  j["shell_diagnostics"] = diag;
  return j;
}

ReportDocument report_from_json(const json& j) {
  if (j.at("schema").get<int>() != kReportSchema) {
    throw Error("unsupported report schema " + j.at("schema").dump());
  }
  ReportDocument doc;
  const auto& meta = j.at("metadata");
  doc.n = meta.at("n").get<Eigen::Index>();
  doc.d = meta.at("d").get<Eigen::Index>();
  doc.column_names = meta.at("columns").get<std::vector<std::string>>();
  doc.tool_version = meta.at("tool_version").get<std::string>();
  const auto& c = meta.at("config");
  doc.config.b_max = c.at("b_max").get<int>();
  doc.config.shell_order = parse_shell_order(c.at("shell_order").get<std::string>());
  doc.config.depth_scatter = parse_depth_scatter(c.at("depth_scatter").get<std::string>());
  doc.config.emit_baselines = c.at("emit_baselines").get<bool>();
  if (!c.at("seed").is_null()) doc.config.seed = c.at("seed").get<std::uint64_t>();

  doc.vmedad = vmedad_from(j.at("vmedad"));
  if (!j.at("baselines").is_null()) doc.baselines = baselines_from(j.at("baselines"));
  for (const auto& s : j.at("shell_diagnostics")) {
    ShellDiagnostics sd;
    sd.order = parse_shell_order(s.at("order").get<std::string>());
    sd.b = s.at("b").get<int>();
    sd.sizes = s.at("sizes").get<std::vector<std::size_t>>();
    for (const auto& m : s.at("medians")) sd.medians.push_back(vec_from(m));
    doc.shell_diagnostics.push_back(std::move(sd));
  }
  return doc;
}

std::string serialize(const ReportDocument& doc) {
  return to_json(doc).dump(2) + "\n";
}

ReportDocument parse_report(const std::string& text) {
  try {
    return report_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

json to_json(const ExperimentResult& result) {
  json j;
  j["schema"] = kReportSchema;
  j["design"] = result.design;
  j["replicates"] = result.replicates;
  j["groups"] = result.groups;
  j["metrics"] = result.metric_names;
  json summary = json::object();
  for (const auto& [group, metrics] : result.summary) {
    json g = json::object();
    for (const auto& [name, s] : metrics) {
      g[name] = {{"mean", s.mean}, {"median", s.median}, {"max", s.max}};
    }
    summary[group] = g;
  }
  j["summary"] = summary;
  j["notes"] = result.notes;
  return j;
}

}  // namespace vmedad

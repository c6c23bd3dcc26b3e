#include "cli.hpp"

#include "vmedad/baselines.hpp"
#include "vmedad/io.hpp"
#include "vmedad/refdist.hpp"
#include "vmedad/report.hpp"
#include "vmedad/simulate.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <memory>
#include <set>
#include <sstream>

#ifdef VMEDAD_HAVE_CURL
#include <curl/curl.h>
#endif

namespace vmedad::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;

std::string fmt_vec(const Vector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt4(v(i));
  }
  return s + ")";
}

std::string fmt_vec(const std::vector<double>& v) {
  return fmt_vec(Vector(Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()))));
}

std::string fmt_mat(const Eigen::MatrixXd& m) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) s += ", ";
      s += fmt4(m(i, j));
    }
  }
  return s + "]";
}

/// Two- or three-column plain table with padded first columns.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& os) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_) {
      if (width.size() < r.size()) width.resize(r.size(), 0);
      for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
    }
    for (const auto& r : rows_) {
      for (std::size_t j = 0; j < r.size(); ++j) {
        os << r[j];
        if (j + 1 < r.size()) os << std::string(width[j] - r[j].size() + 2, ' ');
      }
      os << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

/// Writes to the named file, or to `out` when the path is empty.
template <typename F>
void emit(const std::string& path, std::ostream& out, F&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot write file '" + path + "'");
  write(f);
  if (!f) throw IoError("write failed for '" + path + "'");
}

struct MomentFlags {
  int b_max = 3;
  std::string shell_order = "center-out";
  std::string depth_scatter = "moment";

  void attach(CLI::App* app) {
    app->add_option("--b-max", b_max, "highest shell count (moments up to order b_max + 1)")
        ->check(CLI::Range(2, 64))
        ->capture_default_str();
    app->add_option("--shell-order", shell_order, "shell numbering")
        ->check(CLI::IsMember({"center-out", "depth-ascending"}))
        ->capture_default_str();
    app->add_option("--depth-scatter", depth_scatter, "whitening before spatial depth")
        ->check(CLI::IsMember({"moment", "none"}))
        ->capture_default_str();
  }
  MomentOptions options() const {
    MomentOptions o;
    o.b_max = b_max;
    o.shell_order = parse_shell_order(shell_order);
    o.depth_scatter = parse_depth_scatter(depth_scatter);
    return o;
  }
  ReportConfig report_config(bool baselines, std::optional<std::uint64_t> seed) const {
    const MomentOptions o = options();
    return {o.b_max, o.shell_order, o.depth_scatter, baselines, seed};
  }
};

struct DesignFlags {
  std::string family = "normal";
  int d = 2;
  double nu = 3.0;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "elliptical law")->check(CLI::IsMember({"normal", "t"}))->capture_default_str();
    app->add_option("--d", d, "dimension")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--nu", nu, "t degrees of freedom")->check(CLI::PositiveNumber)->capture_default_str();
  }
  EllipticalDesign design() const {
    return {family == "t" ? Family::student_t : Family::normal, d, family == "t" ? nu : 0.0};
  }
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    double v = 0.0;
    if (!parse_number(tok, v)) throw Error(std::string("bad ") + what + " list entry '" + tok + "'");
    out.push_back(static_cast<T>(v));
  }
  if (out.empty()) throw Error(std::string("empty ") + what + " list");
  return out;
}

void print_report_table(std::ostream& os, const ReportDocument& doc) {
  const VMedadReport& r = doc.vmedad;
  Table t({"quantity", "estimate"});
  t.add({"n", std::to_string(r.n)});
  t.add({"d", std::to_string(r.d)});
  t.add({"Phi1", fmt_vec(r.phi1)});
  t.add({"Phi2", fmt_vec(r.phi2_vec)});
  t.add({"Phi2^Med", fmt4(r.phi2_scale)});
  for (const auto& [k, v] : r.phi) t.add({"Phi" + std::to_string(k), fmt_vec(v)});
  for (const auto& [k, v] : r.psi) t.add({"Psi" + std::to_string(k), fmt_vec(v)});
  t.print(os);
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const std::string& input, const std::string& cols, bool no_header, bool no_baselines,
                const MomentFlags& mf, std::optional<std::uint64_t> seed, const std::string& out_path,
                std::ostream& out, std::ostream& err) {
  const CsvData csv = load_csv(input, parse_selectors(cols), !no_header);
  if (csv.dropped_rows > 0) {
    err << "warning: dropped " << csv.dropped_rows << " row(s) with missing or non-numeric fields\n";
  }
  const ReportDocument doc = analyze(csv.data, csv.column_names, mf.report_config(!no_baselines, seed));
  emit(out_path, out, [&](std::ostream& os) { os << serialize(doc); });
  if (!out_path.empty()) print_report_table(out, doc);
  return 0;
}

// ---------------------------------------------------------------- wdbc

struct PrintedValue {
  const char* name;
  std::vector<double> value;
};

// Values printed for (radius_mean, concavity_mean).
const std::vector<PrintedValue>& printed_wisconsin() {
  static const std::vector<PrintedValue> v = {
      {"Phi1", {13.36, 0.064}},       {"Phi2", {0.01, -0.002}},    {"Phi2^Med", {1.90}},
      {"Phi3", {1.775, 0.054}},       {"Phi4", {-1.525, -0.066}},  {"Psi3", {0.934, 0.028}},
      {"Psi4", {-0.803, -0.035}},     {"|Phi3|", {1.776}},         {"|Phi4|", {1.527}},
      {"|Psi3|", {0.934}},            {"|Psi4|", {0.803}},         {"Mardia b1", {4.03}},
      {"Mardia b2", {14.984}},        {"MRSz gamma", {1.046, 1.982}}, {"MRSz ku", {1.21, -0.37, -0.37, 5.76}},
  };
  return v;
}

int cmd_wdbc(const std::string& file, const std::string& features, bool no_baselines, const MomentFlags& mf,
             const std::string& out_path, std::ostream& out, std::ostream& err) {
  const WdbcData w = load_wdbc(file);
  for (const auto& msg : w.warnings) err << "warning: " << msg << '\n';

  std::vector<std::string> names;
  for (const auto& sel : parse_selectors(features)) {
    if (const auto* s = std::get_if<std::string>(&sel)) {
      names.push_back(*s);
    } else {
      const auto index = std::get<std::size_t>(sel);
      if (index >= wdbc_feature_names().size()) {
        throw ColumnError("feature index " + std::to_string(index) + " out of range (0-29)");
      }
      names.push_back(wdbc_feature_names()[index]);
    }
  }
  const DataMatrix x = w.select(names);
  const ReportDocument doc = analyze(x, names, mf.report_config(!no_baselines, std::nullopt));
  if (!out_path.empty()) emit(out_path, out, [&](std::ostream& os) { os << serialize(doc); });

  const VMedadReport& r = doc.vmedad;
  const bool comparable = names == std::vector<std::string>{"radius_mean", "concavity_mean"};
  std::map<std::string, std::string> ours;
  ours["Phi1"] = fmt_vec(r.phi1);
  ours["Phi2"] = fmt_vec(r.phi2_vec);
  ours["Phi2^Med"] = fmt4(r.phi2_scale);
  for (const auto& [k, v] : r.phi) {
    ours["Phi" + std::to_string(k)] = fmt_vec(v);
    ours["|Phi" + std::to_string(k) + "|"] = fmt4(r.norms.at(k));
  }
  for (const auto& [k, v] : r.psi) {
    if (k < 3) continue;
    ours["Psi" + std::to_string(k)] = fmt_vec(v);
    ours["|Psi" + std::to_string(k) + "|"] = fmt4(r.psi_norms.at(k));
  }
  if (doc.baselines) {
    ours["Mardia b1"] = fmt4(doc.baselines->mardia.skewness);
    ours["Mardia b2"] = fmt4(doc.baselines->mardia.kurtosis);
    ours["MRSz gamma"] = fmt_vec(doc.baselines->mrsz_skew);
    ours["MRSz ku"] = "raw " + fmt_mat(doc.baselines->mrsz_kurt.raw) + "  centred " +
                      fmt_mat(doc.baselines->mrsz_kurt.centered);
  }

  out << "Wisconsin diagnostic data: n = " << r.n << ", features = ";
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << "\nshell order " << to_string(r.shell_order) << ", depth " << to_string(r.depth_scatter)
      << (r.depth_standardized ? " (standardized)" : " (raw)") << "\n\n";

  Table t(comparable ? std::vector<std::string>{"quantity", "computed", "published"}
                     : std::vector<std::string>{"quantity", "computed"});
  std::set<std::string> shown;
  if (comparable) {
    for (const auto& p : printed_wisconsin()) {
      const auto it = ours.find(p.name);
      if (it == ours.end()) continue;
      std::string printed = p.value.size() == 1 ? fmt4(p.value[0])
                            : p.value.size() == 4
                                ? "[" + fmt4(p.value[0]) + ", " + fmt4(p.value[1]) + "; " + fmt4(p.value[2]) + ", " +
                                      fmt4(p.value[3]) + "]"
                                : fmt_vec(p.value);
      t.add({p.name, it->second, printed});
      shown.insert(p.name);
    }
  }
  for (const auto& [k, v] : ours) {
    if (!shown.count(k)) t.add({k, v});
  }
  t.print(out);
  return 0;
}

// ---------------------------------------------------------------- reference

int cmd_reference(const DesignFlags& df, bool as_json, std::ostream& out) {
  const EllipticalDesign design = df.design();
  const ReferenceValues r = design.reference();
  if (as_json) {
    nlohmann::json j = {{"family", df.family},
                        {"d", r.d},
                        {"nu", r.nu ? nlohmann::json(*r.nu) : nlohmann::json(nullptr)},
                        {"phi2_scale", r.phi2_scale},
                        {"c_med_diag", r.c_med_diag},
                        {"phi2_vec", r.phi2_vec},
                        {"phi3", r.phi3},
                        {"phi4", r.phi4}};
    out << j.dump(2) << '\n';
    return 0;
  }
  out << design.describe() << '\n';
  Table t({"quantity", "value"});
  t.add({"phi2_scale", fmt4(r.phi2_scale)});
  t.add({"c_med_diag", fmt4(r.c_med_diag)});
  t.add({"phi2_vec", fmt_vec(r.phi2_vec)});
  t.add({"phi3", fmt_vec(r.phi3)});
  t.add({"phi4", fmt_vec(r.phi4)});
  t.print(out);
  return 0;
}

// ---------------------------------------------------------------- experiments

void print_summary(std::ostream& os, const ExperimentResult& res) {
  for (const auto& [k, v] : res.design) os << k << ": " << v << '\n';
  Table t({"group", "metric", "mean", "median", "max"});
  for (const auto& g : res.groups) {
    const auto& m = res.summary.at(g);
    for (const auto& name : res.metric_names) {
      const MetricSummary& s = m.at(name);
      t.add({g, name, fmt4(s.mean), fmt4(s.median), fmt4(s.max)});
    }
  }
  t.print(os);
  for (const auto& n : res.notes) os << "note: " << n << '\n';
}

void emit_experiment(const ExperimentResult& res, const std::string& csv_path, const std::string& json_path,
                     std::ostream& out) {
  print_summary(out, res);
  if (!csv_path.empty()) emit(csv_path, out, [&](std::ostream& os) { res.write_csv(os); });
  if (!json_path.empty()) emit(json_path, out, [&](std::ostream& os) { os << to_json(res).dump(2) << '\n'; });
}

// ---------------------------------------------------------------- fetch

#ifdef VMEDAD_HAVE_CURL
std::size_t append_body(char* data, std::size_t size, std::size_t count, void* user) {
  static_cast<std::string*>(user)->append(data, size * count);
  return size * count;
}
#endif

int cmd_fetch(const std::string& url, const std::string& path, long timeout, std::ostream& out, std::ostream& err) {
#ifdef VMEDAD_HAVE_CURL
  std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), curl_easy_cleanup);
  if (!curl) throw Error("libcurl initialisation failed");
  std::string body;
  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_TIMEOUT, timeout);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, append_body);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &body);
  const CURLcode rc = curl_easy_perform(curl.get());
  if (rc != CURLE_OK) throw IoError(std::string("download failed: ") + curl_easy_strerror(rc));
  long status = 0;
  curl_easy_getinfo(curl.get(), CURLINFO_RESPONSE_CODE, &status);
  if (status != 200) throw IoError("download failed: HTTP " + std::to_string(status));

  std::size_t rows = 0;
  std::istringstream ss(body);
  for (std::string line; std::getline(ss, line);) rows += line.find_first_not_of(" \r\t") != std::string::npos;
  if (rows != kWdbcRows) err << "warning: expected " << kWdbcRows << " rows, downloaded " << rows << '\n';
  emit(path, out, [&](std::ostream& os) { os << body; });
  out << "wrote " << path << " (" << rows << " rows)\n";
  return 0;
#else
  (void)url;
  (void)path;
  (void)timeout;
  (void)out;
  err << "error: this build has no download support; use tools/fetch_wdbc.py\n";
  return 1;
#endif
}

}  // namespace

std::string fmt4(double v) {
  std::ostringstream os;
  os << std::setprecision(4) << v;
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vector MedAD moments: robust multivariate location, scale, skewness and kurtosis"};
  app.name(args.empty() ? "vmedad" : args.front());
  app.require_subcommand(1, 1);

  MomentFlags mf;
  DesignFlags df;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::uint64_t seed_value = kDefaultSeed;

  auto* analyze_cmd = app.add_subcommand("analyze", "CSV file to JSON report");
  std::string input;
  std::string cols;
  bool no_header = false;
  bool no_baselines = false;
  analyze_cmd->add_option("input", input, "CSV file")->required();
  analyze_cmd->add_option("--cols", cols, "columns by header name or zero-based index, comma-separated");
  analyze_cmd->add_flag("--no-header", no_header, "the first line is data");
  analyze_cmd->add_flag("--no-baselines", no_baselines, "skip Mardia / MRSz");
  analyze_cmd->add_option("--seed", seed, "recorded in the report metadata");
  analyze_cmd->add_option("--out", out_path, "JSON report path (stdout when omitted)");
  mf.attach(analyze_cmd);

  auto* wdbc_cmd = app.add_subcommand("wdbc", "Wisconsin diagnostic data analysis with the published values");
  std::string wdbc_file = "data/wdbc.data";
  std::string features = "radius_mean,concavity_mean";
  wdbc_cmd->add_option("--file", wdbc_file, "wdbc.data path")->capture_default_str();
  wdbc_cmd->add_option("--features", features, "feature names or indices")->capture_default_str();
  wdbc_cmd->add_flag("--no-baselines", no_baselines, "skip Mardia / MRSz");
  wdbc_cmd->add_option("--out", out_path, "also write the JSON report here");
  mf.attach(wdbc_cmd);

  auto* ref_cmd = app.add_subcommand("reference", "closed-form population values");
  bool as_json = false;
  df.attach(ref_cmd);
  ref_cmd->add_flag("--json", as_json, "full-precision JSON instead of a table");

  auto* fig2_cmd = app.add_subcommand("figure2", "Phi2^Med of t_d(nu) against nu, as CSV");
  std::string d_list = "1,2,3";
  std::string nu_grid = "1,1.5,2,2.5,3,4,5,6,7,8,9,10,12,15,20,25,30,40,50,100,1000,1000000";
  fig2_cmd->add_option("--d-list", d_list)->capture_default_str();
  fig2_cmd->add_option("--nu-grid", nu_grid)->capture_default_str();
  fig2_cmd->add_option("--out", out_path, "CSV path (stdout when omitted)");

  auto* fig1_cmd = app.add_subcommand("figure1", "two-cluster mixture scatter and arrows, as CSV");
  Eigen::Index fig1_n = 500;
  fig1_cmd->add_option("--seed", seed_value)->capture_default_str();
  fig1_cmd->add_option("--n", fig1_n)->check(CLI::Range(4, 1000000))->capture_default_str();
  fig1_cmd->add_option("--out", out_path, "CSV path (stdout when omitted)");
  mf.attach(fig1_cmd);

  std::string summary_path;
  int reps = 20;

  auto* cons_cmd = app.add_subcommand("consistency", "Monte Carlo error against the closed form over n");
  std::string n_grid = "500,2000,8000";
  df.attach(cons_cmd);
  cons_cmd->add_option("--n-grid", n_grid)->capture_default_str();
  cons_cmd->add_option("--reps", reps)->check(CLI::PositiveNumber)->capture_default_str();
  cons_cmd->add_option("--seed", seed_value)->capture_default_str();
  cons_cmd->add_option("--out", out_path, "per-replicate CSV");
  cons_cmd->add_option("--summary", summary_path, "JSON summary");
  mf.attach(cons_cmd);

  auto* brk_cmd = app.add_subcommand("breakdown", "contamination experiment");
  BreakdownConfig bc;
  std::string eps_grid = "0,0.1";
  df.attach(brk_cmd);
  brk_cmd->add_option("--n", bc.n)->check(CLI::Range(4, 10000000))->capture_default_str();
  brk_cmd->add_option("--eps", eps_grid, "contamination fractions")->capture_default_str();
  brk_cmd->add_option("--magnitude", bc.magnitude)->capture_default_str();
  brk_cmd->add_option("--reps", reps)->check(CLI::PositiveNumber)->capture_default_str();
  brk_cmd->add_option("--seed", seed_value)->capture_default_str();
  brk_cmd->add_option("--out", out_path, "per-replicate CSV");
  brk_cmd->add_option("--summary", summary_path, "JSON summary");
  mf.attach(brk_cmd);

  auto* eq_cmd = app.add_subcommand("equivariance", "exact-subgroup identities and affine deviations");
  std::string eq_input;
  Eigen::Index eq_n = 300;
  int trials = 100;
  eq_cmd->add_option("--input", eq_input, "CSV file (a t_d(nu) sample is drawn when omitted)");
  eq_cmd->add_option("--cols", cols, "columns of --input");
  df.attach(eq_cmd);
  eq_cmd->add_option("--n", eq_n, "size of the drawn sample")->check(CLI::Range(4, 1000000))->capture_default_str();
  eq_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber)->capture_default_str();
  eq_cmd->add_option("--seed", seed_value)->capture_default_str();
  eq_cmd->add_option("--out", out_path, "per-trial CSV");
  eq_cmd->add_option("--summary", summary_path, "JSON summary");
  mf.attach(eq_cmd);

  auto* fetch_cmd = app.add_subcommand("fetch", "download wdbc.data from the UCI repository");
  std::string url = "https://archive.ics.uci.edu/ml/machine-learning-databases/breast-cancer-wisconsin/wdbc.data";
  std::string fetch_out = "data/wdbc.data";
  long timeout = 30;
  fetch_cmd->add_option("--url", url)->capture_default_str();
  fetch_cmd->add_option("--out", fetch_out)->capture_default_str();
  fetch_cmd->add_option("--timeout", timeout, "seconds")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("vmedad");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*analyze_cmd) {
      return cmd_analyze(input, cols, no_header, no_baselines, mf, seed, out_path, out, err);
    }
    if (*wdbc_cmd) return cmd_wdbc(wdbc_file, features, no_baselines, mf, out_path, out, err);
    if (*ref_cmd) return cmd_reference(df, as_json, out);
    if (*fig2_cmd) {
      const auto curve = figure2_curve(parse_list<int>(d_list, "d"), parse_list<double>(nu_grid, "nu"));
      emit(out_path, out, [&](std::ostream& os) { write_curve_csv(os, curve); });
      return 0;
    }
    if (*fig1_cmd) {
      const Figure1Result fig = run_figure1(seed_value, mf.options(), fig1_n);
      emit(out_path, out, [&](std::ostream& os) { write_figure1_csv(os, fig); });
      if (!out_path.empty()) {
        out << "median " << fmt_vec(fig.median) << "  phi3 " << fmt_vec(fig.phi3) << "  phi4 " << fmt_vec(fig.phi4)
            << "  gamma2 " << fmt_vec(fig.gamma2) << '\n';
      }
      return 0;
    }
    if (*cons_cmd) {
      const auto res = run_consistency(df.design(), parse_list<Eigen::Index>(n_grid, "n"), reps, seed_value,
                                       mf.options());
      emit_experiment(res, out_path, summary_path, out);
      return 0;
    }
    if (*brk_cmd) {
      bc.epsilon_grid = parse_list<double>(eps_grid, "epsilon");
      bc.replicates = reps;
      const auto res = run_breakdown(df.design(), bc, seed_value, mf.options());
      emit_experiment(res, out_path, summary_path, out);
      return 0;
    }
    if (*eq_cmd) {
      const DataMatrix x = eq_input.empty() ? df.design().draw(eq_n, seed_value, 0)
                                            : load_csv(eq_input, parse_selectors(cols), true).data;
      const auto res = run_equivariance_check(x, trials, seed_value, mf.options());
      emit_experiment(res, out_path, summary_path, out);
      return 0;
    }
    if (*fetch_cmd) return cmd_fetch(url, fetch_out, timeout, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace vmedad::cli

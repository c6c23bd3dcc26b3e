#pragma once

// JSON report document for one analysed sample, plus JSON summaries of
// experiment results. Numbers are written with enough digits to round-trip.

#include "vmedad/baselines.hpp"
#include "vmedad/simulate.hpp"
#include "vmedad/vmoments.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace vmedad {

inline constexpr int kReportSchema = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct ShellDiagnostics {
  ShellOrder order = ShellOrder::center_out;
  int b = 0;
  std::vector<std::size_t> sizes;
  std::vector<Vector> medians;  ///< coordinate-wise median of centred members, per shell
};

struct ReportConfig {
  int b_max = 3;
  ShellOrder shell_order = ShellOrder::center_out;
  DepthScatter depth_scatter = DepthScatter::moment;
  bool emit_baselines = true;
  std::optional<std::uint64_t> seed;
};

struct ReportDocument {
  Eigen::Index n = 0;
  Eigen::Index d = 0;
  std::vector<std::string> column_names;
  ReportConfig config;
  std::string tool_version = kToolVersion;

  VMedadReport vmedad;
  std::optional<BaselineReport> baselines;
  std::vector<ShellDiagnostics> shell_diagnostics;
};

/// Runs every analysis the config asks for. Baselines that cannot be formed
/// (n <= d or singular covariance) are omitted.
ReportDocument analyze(const DataMatrix& x, std::vector<std::string> column_names, const ReportConfig& config);

/// Sizes and centred shell medians for b = 2..b_max under both shell orders.
std::vector<ShellDiagnostics> shell_diagnostics(const DataMatrix& x, const VMedadReport& report);

nlohmann::json to_json(const ReportDocument& doc);
ReportDocument report_from_json(const nlohmann::json& j);

/// Pretty-printed JSON with a trailing newline.
std::string serialize(const ReportDocument& doc);
ReportDocument parse_report(const std::string& text);

nlohmann::json to_json(const ExperimentResult& result);

}  // namespace vmedad

#include "vmedad/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

namespace vmedad {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read file '" + path.string() + "'");
  return in;
}

bool getline_clean(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

std::vector<ColumnSelector> parse_selectors(const std::string& text) {
  std::vector<ColumnSelector> out;
  for (const auto& raw : split_csv_record(text)) {
    const std::string tok = trim(raw);
    if (tok.empty()) continue;
    if (std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) {
      out.emplace_back(static_cast<std::size_t>(std::stoull(tok)));
    } else {
      out.emplace_back(tok);
    }
  }
  return out;
}

std::vector<std::string> split_csv_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

bool parse_number(const std::string& field, double& out) {
  const std::string t = trim(field);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

CsvData load_csv(const std::filesystem::path& path, const std::vector<ColumnSelector>& selectors,
                 bool has_header) {
  auto in = open_or_throw(path);
  std::string line;
  std::vector<std::string> header;
  if (has_header) {
    if (!getline_clean(in, line)) throw NoDataError("no usable rows in '" + path.string() + "'");
    for (auto& h : split_csv_record(line)) header.push_back(trim(h));
  }

  std::vector<std::vector<std::string>> records;
  while (getline_clean(in, line)) {
    if (trim(line).empty()) continue;
    records.push_back(split_csv_record(line));
  }
  const std::size_t width = has_header ? header.size() : (records.empty() ? 0 : records.front().size());

  std::vector<std::size_t> cols;
  std::vector<std::string> names;
  if (selectors.empty()) {
    for (std::size_t j = 0; j < width; ++j) {
      cols.push_back(j);
      names.push_back(has_header ? header[j] : "x" + std::to_string(j));
    }
  }
  for (const auto& sel : selectors) {
    if (const auto* name = std::get_if<std::string>(&sel)) {
      if (!has_header) throw ColumnError("column '" + *name + "' selected by name but the file has no header");
      const auto it = std::find(header.begin(), header.end(), *name);
      if (it == header.end()) throw ColumnError("unknown column '" + *name + "'");
      cols.push_back(static_cast<std::size_t>(it - header.begin()));
      names.push_back(*name);
    } else {
      const std::size_t j = std::get<std::size_t>(sel);
      if (j >= width) throw ColumnError("unknown column index " + std::to_string(j));
      cols.push_back(j);
      names.push_back(has_header ? header[j] : "x" + std::to_string(j));
    }
  }
  if (cols.empty()) throw ColumnError("no columns selected");

  std::vector<std::vector<double>> rows;
  std::size_t dropped = 0;
  for (const auto& rec : records) {
    std::vector<double> row(cols.size());
    bool ok = true;
    for (std::size_t k = 0; k < cols.size() && ok; ++k) {
      ok = cols[k] < rec.size() && parse_number(rec[cols[k]], row[k]);
    }
    if (ok) {
      rows.push_back(std::move(row));
    } else {
      ++dropped;
    }
  }
  if (rows.size() < 2) {
    throw NoDataError("no usable rows in '" + path.string() + "' (" + std::to_string(rows.size()) +
                      " parsed, at least 2 needed)");
  }
  return {DataMatrix::from_rows(rows), std::move(names), dropped};
}

const std::vector<std::string>& wdbc_feature_names() {
  static const std::vector<std::string> names = [] {
    const char* base[] = {"radius",      "texture",   "perimeter",      "area",     "smoothness",
                          "compactness", "concavity", "concave_points", "symmetry", "fractal_dimension"};
    std::vector<std::string> out;
    for (const char* suffix : {"mean", "se", "worst"}) {
      for (const char* b : base) out.push_back(std::string(b) + "_" + suffix);
    }
    return out;
  }();
  return names;
}

std::size_t WdbcData::feature_index(const std::string& name) {
  const auto& names = wdbc_feature_names();
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ColumnError("unknown WDBC feature '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

DataMatrix WdbcData::select(const std::vector<std::string>& names) const {
  if (names.empty()) throw ColumnError("no features selected");
  Matrix out(features.n(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t k = 0; k < names.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = features.values().col(static_cast<Eigen::Index>(feature_index(names[k])));
  }
  return DataMatrix(std::move(out));
}

WdbcData load_wdbc(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  constexpr std::size_t kFeatures = 30;
  std::string line;
  std::vector<std::string> ids;
  std::vector<char> labels;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> warnings;
  std::size_t line_no = 0;
  while (getline_clean(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto rec = split_csv_record(line);
    if (rec.size() != kFeatures + 2) {
      warnings.push_back("line " + std::to_string(line_no) + ": expected 32 fields, found " +
                         std::to_string(rec.size()) + "; skipped");
      continue;
    }
    const std::string diag = trim(rec[1]);
    if (diag != "M" && diag != "B") {
      warnings.push_back("line " + std::to_string(line_no) + ": diagnosis '" + diag + "' is not M/B; skipped");
      continue;
    }
    std::vector<double> row(kFeatures);
    bool ok = true;
    for (std::size_t k = 0; k < kFeatures && ok; ++k) ok = parse_number(rec[k + 2], row[k]);
    if (!ok) {
      warnings.push_back("line " + std::to_string(line_no) + ": non-numeric feature; skipped");
      continue;
    }
    ids.push_back(trim(rec[0]));
    labels.push_back(diag[0]);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw NoDataError("no usable WDBC rows in '" + path.string() + "'");
  if (rows.size() != kWdbcRows) {
    warnings.push_back("expected " + std::to_string(kWdbcRows) + " rows, read " + std::to_string(rows.size()));
  }
  return {std::move(ids), std::move(labels), DataMatrix::from_rows(rows), std::move(warnings)};
}

}  // namespace vmedad

#pragma once

#include "vmedad/types.hpp"

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace vmedad {

/// The input file could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A column selector names a column that does not exist.
class ColumnError : public Error {
 public:
  using Error::Error;
};

/// Parsing left fewer usable rows than required.
class NoDataError : public Error {
 public:
  using Error::Error;
};

/// Column by header name or zero-based index.
using ColumnSelector = std::variant<std::string, std::size_t>;

/// Parses "a,b,3" into selectors; all-digit tokens become indices.
std::vector<ColumnSelector> parse_selectors(const std::string& text);

/// One RFC-4180 style record: commas separate fields, double quotes enclose
/// fields that contain commas or quotes, and "" inside quotes is a literal quote.
std::vector<std::string> split_csv_record(const std::string& line);

/// Locale-independent strict number parse; surrounding blanks are ignored.
bool parse_number(const std::string& field, double& out);

struct CsvData {
  DataMatrix data;
  std::vector<std::string> column_names;
  std::size_t dropped_rows = 0;
};

/// Reads the selected numeric columns (all columns when selectors is empty).
/// Rows with a missing or non-numeric selected field are dropped and counted.
/// Throws IoError, ColumnError (unknown column, or a name without a header),
/// or NoDataError (fewer than 2 usable rows).
CsvData load_csv(const std::filesystem::path& path, const std::vector<ColumnSelector>& selectors,
                 bool has_header);

/// Canonical WDBC feature names: radius, texture, perimeter, area,
/// smoothness, compactness, concavity, concave_points, symmetry,
/// fractal_dimension, each with suffix _mean, then _se, then _worst.
const std::vector<std::string>& wdbc_feature_names();

struct WdbcData {
  std::vector<std::string> ids;
  std::vector<char> diagnosis;  ///< 'M' or 'B'
  DataMatrix features;          ///< n x 30, file columns 2..31
  std::vector<std::string> warnings;

  /// Column index of a feature by canonical name; throws ColumnError.
  static std::size_t feature_index(const std::string& name);
  /// n x k matrix of the named features, in the order given.
  DataMatrix select(const std::vector<std::string>& names) const;
};

/// Reads the comma-separated WDBC file: id, diagnosis (B/M), 30 features.
/// A row count other than 569 is reported as a warning, not an error.
WdbcData load_wdbc(const std::filesystem::path& path);

inline constexpr std::size_t kWdbcRows = 569;

}  // namespace vmedad

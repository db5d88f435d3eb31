#pragma once

// Result tables and their CSV / JSON serializations. Output depends only on
// the table and its metadata, so identical runs give byte-identical files.

#include <cstdint>
#include <string>
#include <vector>

namespace phasetrack::table {

struct Column {
  std::string name;
  std::string unit;
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows; ///< NaN = not applicable

  void add_row(std::vector<double> row);
};

struct Meta {
  std::string command;
  std::uint64_t seed = 0;
  std::string version;
  std::string scenario_json; ///< canonical config, see config::to_json
  std::string units_json;
};

enum class Format { csv, json };

Format format_from_string(const std::string &name);

/// "# phasetrack ..." metadata line, "# units: ..." line, header line, then
/// one line per row with every value printed with 17 significant digits
/// (NaN as "nan").
std::string to_csv(const Table &t, const Meta &meta);

/// {"meta": {...}, "columns": [{name, unit}], "rows": [{name: value}]} with
/// NaN as null.
std::string to_json(const Table &t, const Meta &meta);

std::string serialize(const Table &t, const Meta &meta, Format format);

/// Writes the serialized table. Throws ParameterError for an empty table and
/// IoError naming the path when it cannot be written.
void write_file(const Table &t, const Meta &meta, Format format, const std::string &path);

} // namespace phasetrack::table

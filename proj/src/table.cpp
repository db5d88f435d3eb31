#include "phasetrack/table.hpp"

#include "phasetrack/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

namespace phasetrack::table {

namespace {

std::string format_double(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw ParameterError("table row has " + std::to_string(row.size()) + " values for " +
                         std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

Format format_from_string(const std::string &name) {
  if (name == "csv")
    return Format::csv;
  if (name == "json")
    return Format::json;
  throw ParameterError("unknown output format '" + name + "' (accepted: csv, json)");
}

std::string to_csv(const Table &t, const Meta &meta) {
  std::string out = "# phasetrack " + meta.version + " command=" + meta.command +
                    " seed=" + std::to_string(meta.seed) + "\n# units:";
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    out += (i ? "," : " ") + csv_field(t.columns[i].unit);
  out += '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    out += (i ? "," : "") + csv_field(t.columns[i].name);
  out += '\n';
  for (const auto &row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out += (i ? "," : "") + format_double(row[i]);
    out += '\n';
  }
  return out;
}

std::string to_json(const Table &t, const Meta &meta) {
  using nlohmann::ordered_json;
  ordered_json m;
  m["command"] = meta.command;
  m["seed"] = meta.seed;
  m["version"] = meta.version;
  m["scenario"] = meta.scenario_json.empty() ? ordered_json::object()
                                             : ordered_json::parse(meta.scenario_json);
  m["units"] = meta.units_json.empty() ? ordered_json::object()
                                       : ordered_json::parse(meta.units_json);

  ordered_json cols = ordered_json::array();
  for (const auto &c : t.columns)
    cols.push_back({{"name", c.name}, {"unit", c.unit}});

  ordered_json rows = ordered_json::array();
  for (const auto &row : t.rows) {
    ordered_json r = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (std::isfinite(row[i]))
        r[t.columns[i].name] = row[i];
      else if (std::isinf(row[i]))
        r[t.columns[i].name] = row[i] > 0 ? "inf" : "-inf";
      else
        r[t.columns[i].name] = nullptr;
    }
    rows.push_back(std::move(r));
  }

  ordered_json doc;
  doc["meta"] = std::move(m);
  doc["columns"] = std::move(cols);
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string serialize(const Table &t, const Meta &meta, Format format) {
  if (t.rows.empty())
    throw ParameterError("refusing to emit an empty result set");
  return format == Format::csv ? to_csv(t, meta) : to_json(t, meta);
}

void write_file(const Table &t, const Meta &meta, Format format, const std::string &path) {
  const std::string text = serialize(t, meta, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out)
    throw IoError("failed writing '" + path + "'");
}

} // namespace phasetrack::table

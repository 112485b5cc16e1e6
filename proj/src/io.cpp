#include "pdlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "pdlab/errors.hpp"

namespace pdlab {

std::string format_double(double x) {
  char buf[64];
  // Shortest representation that round-trips a double.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string cell_to_string(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) {
    return std::to_string(std::get<std::int64_t>(c));
  }
  if (std::holds_alternative<double>(c)) {
    return format_double(std::get<double>(c));
  }
  return std::get<std::string>(c);
}

}  // namespace

void write_csv(std::ostream& os, const Table& table, const OutputMeta& meta) {
  os << "# version=" << meta.version << "\n";
  os << "# seed=" << meta.seed << "\n";
  for (const auto& [k, v] : meta.config) {
    os << "# " << k << "=" << v << "\n";
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) os << ",";
    os << csv_escape(table.columns[c]);
  }
  os << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw Error("csv row width does not match header");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ",";
      os << csv_escape(cell_to_string(row[c]));
    }
    os << "\n";
  }
}

void write_json(std::ostream& os, const Table& table, const OutputMeta& meta) {
  nlohmann::ordered_json doc;
  doc["meta"]["config"] = meta.config;
  doc["meta"]["seed"] = meta.seed;
  doc["meta"]["version"] = meta.version;
  doc["data"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw Error("json row width does not match header");
    }
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const Cell& cell = row[c];
      if (std::holds_alternative<std::int64_t>(cell)) {
        obj[table.columns[c]] = std::get<std::int64_t>(cell);
      } else if (std::holds_alternative<double>(cell)) {
        const double x = std::get<double>(cell);
        // JSON has no inf/nan literals; emit strings for those.
        if (std::isfinite(x)) {
          obj[table.columns[c]] = x;
        } else {
          obj[table.columns[c]] = format_double(x);
        }
      } else {
        obj[table.columns[c]] = std::get<std::string>(cell);
      }
    }
    doc["data"].push_back(std::move(obj));
  }
  os << doc.dump(2) << "\n";
}

void write_table(std::ostream& os, const std::string& format,
                 const Table& table, const OutputMeta& meta) {
  if (format == "csv") {
    write_csv(os, table, meta);
  } else if (format == "json") {
    write_json(os, table, meta);
  } else {
    throw ConfigError("unknown output format '" + format + "'");
  }
}

}  // namespace pdlab

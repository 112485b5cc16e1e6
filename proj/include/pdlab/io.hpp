#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace pdlab {

// Resolved run description embedded in every output file. Thread count is
// deliberately excluded: outputs are identical at any parallelism level,
// and embedding it would break that byte-for-byte.
struct OutputMeta {
  std::map<std::string, std::string> config;
  std::uint64_t seed = 0;
  std::string version;
};

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double x);  // shortest round-trip representation
std::string csv_escape(const std::string& field);

// CSV per RFC 4180, preceded by '# key=value' comment lines carrying the
// resolved config, and a header row of column names.
void write_csv(std::ostream& os, const Table& table, const OutputMeta& meta);

// JSON document {"meta": {"config", "seed", "version"}, "data": [...]},
// data rows as objects keyed by column name.
void write_json(std::ostream& os, const Table& table, const OutputMeta& meta);

void write_table(std::ostream& os, const std::string& format,
                 const Table& table, const OutputMeta& meta);

}  // namespace pdlab

#pragma once

// Delimited text tables: the output format of every CLI report.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "sslud/error.hpp"

namespace sslud {

/// Seven significant digits, the precision of published tables.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.7g", v);
  return buf;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) {
      throw Error(ErrorCode::InvalidInput, "table row has " + std::to_string(row.size()) +
                                               " cells, header has " + std::to_string(header.size()));
    }
    rows.push_back(std::move(row));
  }

  void add_numeric_row(const std::vector<double>& values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format_number(v));
    add_row(std::move(row));
  }
};

inline void write_table(std::ostream& out, const Table& table, char sep = '\t') {
  auto write_line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << sep;
      out << cells[i];
    }
    out << '\n';
  };
  write_line(table.header);
  for (const auto& row : table.rows) write_line(row);
}

}  // namespace sslud

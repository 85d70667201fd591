// SPDX-License-Identifier: Apache-2.0
#include "qpskrx/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qpskrx {

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(const Table& table, std::ostream& out) {
  out << "# " << table.header.dump() << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::json doc = table.header;
  doc["columns"] = table.columns;
  doc["rows"] = table.rows;
  out << doc.dump(2) << '\n';
}

}  // namespace qpskrx

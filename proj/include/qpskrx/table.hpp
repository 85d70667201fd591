// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace qpskrx {

/// Result table: fixed columns, one row per grid point, all values numeric.
struct Table {
  nlohmann::json header;  // {"config": ..., "digest": ..., "seed": ...}
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;  // throws std::out_of_range
};

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// Line 1: "# " + header JSON; line 2: column names; then rows.
void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

}  // namespace qpskrx

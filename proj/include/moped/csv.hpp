// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace moped {

/// Shortest representation with 17 significant digits: round-trips exactly.
std::string format_double(double v);

/// Splits one CSV line on commas (no quoting; the formats here never need it).
std::vector<std::string> split_csv_line(const std::string& line);

double parse_double_field(const std::string& field, long line);
long parse_long_field(const std::string& field, long line);

}  // namespace moped

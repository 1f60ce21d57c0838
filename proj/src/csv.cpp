// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#include "moped/csv.hpp"

#include <cstdio>
#include <cstdlib>

#include "moped/errors.hpp"

namespace moped {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double_field(const std::string& field, long line) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0')
    throw CsvParseError("malformed numeric field '" + field + "'", line);
  return v;
}

long parse_long_field(const std::string& field, long line) {
  char* end = nullptr;
  const long v = std::strtol(field.c_str(), &end, 10);
  if (end == field.c_str() || *end != '\0')
    throw CsvParseError("malformed integer field '" + field + "'", line);
  return v;
}

}  // namespace moped

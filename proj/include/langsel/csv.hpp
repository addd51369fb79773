#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace langsel::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number in the source
  std::vector<std::string> fields;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;
};

/// Parses comma-separated text with optional double-quoted fields. The first
/// line is the header. A trailing newline is allowed; other blank lines are a
/// ParseError. `source` names the input in error messages.
Table parse(std::string_view text, const std::string& source);

/// Requires the header to be exactly `expected`, or `expected` followed by any of `optional`.
void require_header(const Table& table, const std::vector<std::string>& expected,
                    const std::string& source, const std::vector<std::string>& optional = {});

/// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

/// Strict decimal parse of the whole field; ParseError otherwise.
double to_double(const std::string& field, const std::string& source, std::size_t line,
                 const std::string& column);
long long to_integer(const std::string& field, const std::string& source, std::size_t line,
                     const std::string& column);

}  // namespace langsel::csv

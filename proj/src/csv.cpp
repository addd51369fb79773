#include "langsel/csv.hpp"

#include <charconv>
#include <cmath>

#include "langsel/error.hpp"

namespace langsel::csv {

namespace {

std::vector<std::string> split_line(std::string_view line, const std::string& source,
                                    std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  std::size_t i = 0;
  bool quoted = false;
  bool field_was_quoted = false;
  while (i < line.size()) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      if (!cur.empty() || field_was_quoted)
        throw ParseError(source, line_no, "stray quote inside unquoted field");
      quoted = field_was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      field_was_quoted = false;
    } else {
      if (field_was_quoted) throw ParseError(source, line_no, "text after closing quote");
      cur += c;
    }
    ++i;
  }
  if (quoted) throw ParseError(source, line_no, "unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

Table parse(std::string_view text, const std::string& source) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  Table table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos < text.size()) {
    // A record ends at the first newline outside quotes.
    std::size_t end = pos;
    std::size_t newlines = 0;
    bool quoted = false;
    for (; end < text.size(); ++end) {
      if (text[end] == '"') quoted = !quoted;
      else if (text[end] == '\n') {
        if (!quoted) break;
        ++newlines;
      }
    }
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) throw ParseError(source, line_no, "blank line");
    auto fields = split_line(line, source, line_no);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
    } else {
      table.rows.push_back({line_no, std::move(fields)});
    }
    line_no += newlines;
  }
  if (!have_header) throw EmptyInput(source + ": file is empty");
  return table;
}

void require_header(const Table& table, const std::vector<std::string>& expected,
                    const std::string& source, const std::vector<std::string>& optional) {
  auto joined = [](const std::vector<std::string>& cols) {
    std::string s;
    for (const auto& c : cols) s += (s.empty() ? "" : ",") + c;
    return s;
  };
  bool ok = table.header.size() >= expected.size() &&
            table.header.size() <= expected.size() + optional.size();
  for (std::size_t i = 0; ok && i < table.header.size(); ++i) {
    const std::string& want =
        i < expected.size() ? expected[i] : optional[i - expected.size()];
    ok = table.header[i] == want;
  }
  if (!ok)
    throw ParseError(source, 1, "expected header '" + joined(expected) + "', got '" +
                                    joined(table.header) + "'");
  for (const auto& row : table.rows)
    if (row.fields.size() != table.header.size())
      throw ParseError(source, row.line,
                       "expected " + std::to_string(table.header.size()) + " fields, got " +
                           std::to_string(row.fields.size()));
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

double to_double(const std::string& field, const std::string& source, std::size_t line,
                 const std::string& column) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  if (!field.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last || !std::isfinite(value))
    throw ParseError(source, line, column + " '" + field + "' is not a number");
  return value;
}

long long to_integer(const std::string& field, const std::string& source, std::size_t line,
                     const std::string& column) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError(source, line, column + " '" + field + "' is not an integer");
  return value;
}

}  // namespace langsel::csv

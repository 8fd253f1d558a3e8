#include "meshsoc/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "meshsoc/error.hpp"

namespace meshsoc {

namespace {

// Empty < numbers < text.
int cell_rank(const CsvCell& c) {
  if (std::holds_alternative<std::monostate>(c)) return 0;
  if (std::holds_alternative<std::string>(c)) return 2;
  return 1;
}

double as_number(const CsvCell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  return std::get<double>(c);
}

int compare_cells(const CsvCell& a, const CsvCell& b) {
  const int ra = cell_rank(a);
  const int rb = cell_rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (ra == 1) {
    const double x = as_number(a);
    const double y = as_number(b);
    return x < y ? -1 : (y < x ? 1 : 0);
  }
  if (ra == 2) return std::get<std::string>(a).compare(std::get<std::string>(b));
  return 0;
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render(const CsvCell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return quote(*s);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  return {};
}

void append_row(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  out += '\n';
}

}  // namespace

std::string format_real(double value) {
  if (!std::isfinite(value)) return {};
  // Round the shortest decimal form half away from zero, so 0.5555555
  // prints as 0.555556 even though the nearest double lies just below it.
  std::array<char, 400> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), std::abs(value),
                                 std::chars_format::fixed);
  std::string digits(buf.data(), res.ptr);
  auto dot = digits.find('.');
  if (dot == std::string::npos) {
    dot = digits.size();
    digits += '.';
  }
  digits.append(7, '0');
  const bool round_up = digits[dot + 7] >= '5';
  digits.resize(dot + 7);
  if (round_up) {
    for (auto i = digits.size(); i-- > 0;) {
      if (digits[i] == '.') continue;
      if (digits[i] != '9') {
        ++digits[i];
        break;
      }
      digits[i] = '0';
      if (i == 0) digits.insert(digits.begin(), '1');
    }
  }
  if (value < 0 && digits.find_first_not_of("0.") != std::string::npos) digits.insert(0, "-");
  return digits;
}

std::string format_csv(const CsvTable& table) {
  for (const auto& row : table.rows)
    if (row.size() != table.header.size())
      throw InvalidArgument("CSV row has " + std::to_string(row.size()) + " cells, header has " +
                            std::to_string(table.header.size()));

  std::vector<const std::vector<CsvCell>*> rows;
  rows.reserve(table.rows.size());
  for (const auto& row : table.rows) rows.push_back(&row);
  const auto keys = std::min(table.key_columns, table.header.size());
  std::stable_sort(rows.begin(), rows.end(), [keys](const auto* a, const auto* b) {
    for (std::size_t k = 0; k < keys; ++k)
      if (const int c = compare_cells((*a)[k], (*b)[k]); c != 0) return c < 0;
    return false;
  });

  std::string out;
  std::vector<std::string> fields;
  for (const auto& h : table.header) fields.push_back(quote(h));
  append_row(out, fields);
  for (const auto* row : rows) {
    fields.clear();
    for (const auto& cell : *row) fields.push_back(render(cell));
    append_row(out, fields);
  }
  return out;
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
  const auto text = format_csv(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace meshsoc

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace meshsoc {

/// Empty, text, integer or real. Reals print with 6 decimals; empty and
/// non-finite reals print as an empty field.
using CsvCell = std::variant<std::monostate, std::string, std::int64_t, double>;

struct CsvTable {
  std::vector<std::string> header;
  /// Rows are emitted sorted by this many leading columns (numbers compare
  /// numerically, text lexicographically, empty first). Sorting is stable.
  std::size_t key_columns = 1;
  std::vector<std::vector<CsvCell>> rows;
};

std::string format_real(double value);

/// RFC 4180 text with CRLF-free "\n" line endings. Throws InvalidArgument
/// when a row's width differs from the header's.
std::string format_csv(const CsvTable& table);

/// Writes format_csv(table); throws Error on I/O failure.
void write_csv(const CsvTable& table, const std::filesystem::path& path);

}  // namespace meshsoc

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace etdmine {

using CsvRow = std::vector<std::string>;

/// Quotes a field when it contains a comma, quote, CR or LF (RFC 4180).
std::string csv_escape(std::string_view field);

/// One record terminated by CRLF.
std::string csv_line(const CsvRow& row);

/// Writes header and rows to path. Throws DataError if the file cannot be written.
void write_csv(const std::filesystem::path& path, const CsvRow& header, const std::vector<CsvRow>& rows);

/// Parses RFC 4180 text; accepts LF or CRLF record separators.
std::vector<CsvRow> parse_csv(std::string_view text);
std::vector<CsvRow> read_csv(const std::filesystem::path& path);

/// Fixed-point rendering used for every probability column.
std::string format_fixed(double value, int digits = 8);

}  // namespace etdmine

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace confrank::csv {

using Row = std::vector<std::string>;

struct Table {
  Row header;
  // Data rows with the 1-based line number at which each row starts.
  std::vector<Row> rows;
  std::vector<std::size_t> line_numbers;
};

// RFC 4180 style reader: quoted fields may contain the delimiter, doubled
// quotes and line breaks. CRLF and LF are both accepted. A UTF-8 BOM at the
// start of the text is skipped. Blank lines are ignored.
std::vector<Row> read_rows(std::string_view text, char delimiter,
                           std::vector<std::size_t>* line_numbers = nullptr);

// First row becomes the header.
Table read_table(std::string_view text, char delimiter);

// Picks ';' or ',' by counting unquoted occurrences in the first line.
char detect_delimiter(std::string_view text);

// Case-insensitive header lookup; returns the column index.
std::optional<std::size_t> find_column(const Row& header, std::string_view name);

// Quotes a field only when it contains the delimiter, a quote, CR or LF.
std::string escape_field(std::string_view field, char delimiter = ',');

// Joins escaped fields and terminates the line with LF.
std::string format_row(const Row& fields, char delimiter = ',');

}  // namespace confrank::csv

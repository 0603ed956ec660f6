#include "confrank/csv.hpp"

#include "confrank/error.hpp"
#include "confrank/text.hpp"

namespace confrank::csv {

std::vector<Row> read_rows(std::string_view text, char delimiter,
                           std::vector<std::size_t>* line_numbers) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<Row> rows;
  Row row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // any content, quoted or not, in the current row
  std::size_t line = 1;
  std::size_t row_start_line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    bool blank = row.size() == 1 && row.front().empty() && !field_started;
    if (!blank) {
      rows.push_back(std::move(row));
      if (line_numbers) line_numbers->push_back(row_start_line);
    }
    row.clear();
    field_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      field_started = true;
    } else if (c == delimiter) {
      field_started = true;
      end_field();
    } else if (c == '\r') {
      // Dropped; a bare CR never ends a row.
    } else if (c == '\n') {
      end_row();
      ++line;
      row_start_line = line;
    } else {
      field_started = true;
      field.push_back(c);
    }
  }
  if (in_quotes) {
    throw Error(Errc::RowParseError,
                "line " + std::to_string(row_start_line) + ": unterminated quoted field");
  }
  if (field_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

Table read_table(std::string_view text, char delimiter) {
  Table table;
  std::vector<std::size_t> lines;
  auto rows = read_rows(text, delimiter, &lines);
  if (rows.empty()) throw Error(Errc::EmptyFile, "no header row");
  table.header = std::move(rows.front());
  for (auto& h : table.header) h = std::string(text::trim(h));
  table.rows.assign(std::make_move_iterator(rows.begin() + 1), std::make_move_iterator(rows.end()));
  table.line_numbers.assign(lines.begin() + 1, lines.end());
  return table;
}

char detect_delimiter(std::string_view text) {
  std::size_t semicolons = 0;
  std::size_t commas = 0;
  bool in_quotes = false;
  for (char c : text) {
    if (c == '"') in_quotes = !in_quotes;
    if (in_quotes) continue;
    if (c == '\n') break;
    if (c == ';') ++semicolons;
    if (c == ',') ++commas;
  }
  return semicolons > commas ? ';' : ',';
}

std::optional<std::size_t> find_column(const Row& header, std::string_view name) {
  auto wanted = text::to_lower(name);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (text::to_lower(text::trim(header[i])) == wanted) return i;
  }
  return std::nullopt;
}

std::string escape_field(std::string_view field, char delimiter) {
  bool needs_quotes = field.find_first_of(std::string{delimiter, '"', '\r', '\n'}) !=
                      std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_row(const Row& fields, char delimiter) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(delimiter);
    out += escape_field(fields[i], delimiter);
  }
  out.push_back('\n');
  return out;
}

}  // namespace confrank::csv

#include "confrank/asjc.hpp"

#include "confrank/csv.hpp"
#include "confrank/error.hpp"
#include "confrank/records.hpp"
#include "confrank/text.hpp"

namespace confrank {

extern const char* const kBuiltinAsjcCsv;

namespace {

std::string name_key(std::string_view name) {
  std::string out;
  bool pending_space = false;
  for (char c : text::trim(name)) {
    if (c == ' ' || c == '\t') {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return text::to_lower(out);
}

}  // namespace

AsjcCode make_asjc(int code, std::optional<std::string> name) {
  if (code < 1000 || code > 9999) {
    throw Error(Errc::InvalidArgument, "ASJC code " + std::to_string(code) + " outside 1000..9999");
  }
  return AsjcCode{code, std::move(name)};
}

const AsjcTable& AsjcTable::builtin() {
  static const AsjcTable table = from_csv(kBuiltinAsjcCsv);
  return table;
}

AsjcTable AsjcTable::from_csv(std::string_view text) {
  auto table = csv::read_table(text, ',');
  auto code_col = csv::find_column(table.header, "asjc_code");
  auto name_col = csv::find_column(table.header, "name");
  if (!code_col) throw Error(Errc::MissingColumn, "asjc_code");
  if (!name_col) throw Error(Errc::MissingColumn, "name");

  AsjcTable out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    auto line = std::to_string(table.line_numbers[i]);
    if (row.size() <= std::max(*code_col, *name_col)) {
      throw Error(Errc::RowParseError, "ASJC table line " + line + ": too few fields");
    }
    auto code = text::parse_integer(row[*code_col]);
    if (!code || *code < 1000 || *code > 9999) {
      throw Error(Errc::RowParseError, "ASJC table line " + line + ": bad code");
    }
    auto name = std::string(text::trim(row[*name_col]));
    out.by_name_.emplace(name_key(name), static_cast<int>(*code));
    out.by_code_.emplace(static_cast<int>(*code), name);
  }
  return out;
}

std::optional<int> AsjcTable::code_for(std::string_view name) const {
  auto it = by_name_.find(name_key(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> AsjcTable::name_for(int code) const {
  auto it = by_code_.find(code);
  if (it == by_code_.end()) return std::nullopt;
  return it->second;
}

}  // namespace confrank

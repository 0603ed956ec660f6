#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace confrank {

// Two-way lookup between ASJC category names and codes. Name matching is
// case-insensitive and collapses runs of whitespace.
class AsjcTable {
 public:
  // The table compiled in from data/asjc_codes.csv.
  static const AsjcTable& builtin();
  // CSV with header `asjc_code,name`; several names may share a code, the
  // first one listed is the display name.
  static AsjcTable from_csv(std::string_view text);

  std::optional<int> code_for(std::string_view name) const;
  std::optional<std::string> name_for(int code) const;
  std::size_t size() const noexcept { return by_code_.size(); }

 private:
  std::map<std::string, int> by_name_;
  std::map<int, std::string> by_code_;
};

}  // namespace confrank

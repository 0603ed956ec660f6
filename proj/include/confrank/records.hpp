#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "confrank/issn.hpp"

namespace confrank {

// Scopus All Science Journal Classification code. Identity is the numeric
// code; the name is descriptive only and ignored by comparisons.
struct AsjcCode {
  int code = 0;
  std::optional<std::string> name;

  friend bool operator==(const AsjcCode& a, const AsjcCode& b) { return a.code == b.code; }
  friend auto operator<=>(const AsjcCode& a, const AsjcCode& b) { return a.code <=> b.code; }
};

// Throws InvalidArgument outside 1000..9999.
AsjcCode make_asjc(int code, std::optional<std::string> name = std::nullopt);

enum class SourceType { Journal, BookSeries, ConferenceProceedings, TradeJournal };
enum class SourceStatus { Ongoing, Discontinued };

std::string_view to_string(SourceType type);
std::string_view to_string(SourceStatus status);
// Accepts the canonical spellings plus the SCImago "conference and
// proceedings" variant, case-insensitively.
std::optional<SourceType> parse_source_type(std::string_view s);
std::optional<SourceStatus> parse_source_status(std::string_view s);

struct SourceRecord {
  std::string source_id;
  std::string title;
  std::set<Issn> issns;
  SourceType source_type = SourceType::Journal;
  // SCImago exports carry no status; it is filled in from the source list.
  std::optional<SourceStatus> status;
  std::optional<double> sjr;
  std::set<AsjcCode> categories;

  friend bool operator==(const SourceRecord&, const SourceRecord&) = default;
};

struct ExpertEntry {
  std::string entry_id;
  std::string title;
  std::optional<std::string> acronym;
  std::string rank_label;

  friend bool operator==(const ExpertEntry&, const ExpertEntry&) = default;
};

struct PubCount {
  std::string source_id;
  AsjcCode category;
  long long count = 0;
};

}  // namespace confrank

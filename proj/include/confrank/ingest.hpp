#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "confrank/asjc.hpp"
#include "confrank/error.hpp"
#include "confrank/records.hpp"
#include "confrank/text.hpp"

namespace confrank::ingest {

enum class ParseMode { Strict, Lenient };

struct ParseOptions {
  ParseMode mode = ParseMode::Strict;
  // Row errors tolerated before parsing fails. Unset means 0 in strict mode
  // and unlimited in lenient mode.
  std::optional<std::size_t> max_row_errors;
  // 0 selects auto-detection between ';' and ','.
  char delimiter = 0;
  text::DecimalMark decimal = text::DecimalMark::Auto;
  // Name-to-code lookup for SCImago category names; nullptr uses the builtin.
  const AsjcTable* asjc = nullptr;
};

struct RowIssue {
  std::size_t line = 0;
  Errc code = Errc::RowParseError;
  std::string message;
};

template <class T>
struct Parsed {
  std::vector<T> records;
  std::vector<RowIssue> issues;  // rows rejected (lenient mode)
  std::vector<std::string> warnings;  // accepted rows with lossy fields
};

// SCImago journal-rank export. Required columns (any case): Sourceid, Title,
// Type, Issn, SJR, Categories. Category quartile suffixes are discarded.
Parsed<SourceRecord> parse_scimago_csv(std::string_view text, const ParseOptions& options = {});
Parsed<SourceRecord> parse_scimago_csv(std::istream& in, const ParseOptions& options = {});

// Canonical source list: source_id,title,issn,e_issn,type,status,asjc_codes.
Parsed<SourceRecord> parse_source_list(std::string_view text, const ParseOptions& options = {});
Parsed<SourceRecord> parse_source_list(std::istream& in, const ParseOptions& options = {});

// Inverse of parse_source_list. Records need a status and at most two ISSNs
// (written as issn then e_issn in canonical order); InvalidArgument otherwise.
std::string emit_source_list(std::span<const SourceRecord> records);

// Expert ranking: entry_id,title,acronym,rank. The first row is a header iff
// its first field is not an integer; a headerless file is read positionally.
// Without an entry_id column, ids are the 1-based data row numbers.
Parsed<ExpertEntry> parse_expert_csv(std::string_view text, const ParseOptions& options = {});
Parsed<ExpertEntry> parse_expert_csv(std::istream& in, const ParseOptions& options = {});

// Publication counts: source_id,asjc_code,publication_count.
Parsed<PubCount> parse_pubcounts(std::string_view text, const ParseOptions& options = {});
Parsed<PubCount> parse_pubcounts(std::istream& in, const ParseOptions& options = {});

struct MergeResult {
  std::vector<SourceRecord> conferences;      // ongoing proceedings with SJR
  std::vector<SourceRecord> rank_population;  // journals and book series with SJR
  std::vector<RowIssue> issues;               // duplicate join keys
  std::size_t scimago_only = 0;               // SCImago rows without a source-list match
};

// Joins SCImago rows to source-list rows by source_id, falling back to any
// shared ISSN. Type and status come from the source list, SJR from SCImago,
// categories are unioned. SCImago-only journals and book series still enter
// the threshold population; SCImago-only proceedings lack a status and are
// dropped. Strict mode throws DuplicateJoinKey when two source-list rows claim
// the same ISSN; lenient mode reports it and keeps the first row.
MergeResult merge_sources(std::span<const SourceRecord> scimago,
                          std::span<const SourceRecord> source_list,
                          ParseMode mode = ParseMode::Strict);

std::string read_file(const std::string& path);

}  // namespace confrank::ingest

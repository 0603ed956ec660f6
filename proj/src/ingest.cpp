#include "confrank/ingest.hpp"

#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "confrank/csv.hpp"

namespace confrank {

std::string_view to_string(SourceType type) {
  switch (type) {
    case SourceType::Journal: return "journal";
    case SourceType::BookSeries: return "book series";
    case SourceType::ConferenceProceedings: return "conference proceedings";
    case SourceType::TradeJournal: return "trade journal";
  }
  return "journal";
}

std::string_view to_string(SourceStatus status) {
  return status == SourceStatus::Ongoing ? "ongoing" : "discontinued";
}

std::optional<SourceType> parse_source_type(std::string_view s) {
  auto key = text::to_lower(text::trim(s));
  if (key == "journal") return SourceType::Journal;
  if (key == "book series") return SourceType::BookSeries;
  if (key == "conference proceedings" || key == "conference and proceedings") {
    return SourceType::ConferenceProceedings;
  }
  if (key == "trade journal") return SourceType::TradeJournal;
  return std::nullopt;
}

std::optional<SourceStatus> parse_source_status(std::string_view s) {
  auto key = text::to_lower(text::trim(s));
  if (key == "ongoing") return SourceStatus::Ongoing;
  if (key == "discontinued") return SourceStatus::Discontinued;
  return std::nullopt;
}

}  // namespace confrank

namespace confrank::ingest {

namespace {

// Collects row-level problems and enforces the configured error budget.
class IssueSink {
 public:
  IssueSink(const ParseOptions& options, std::string file_kind) : kind_(std::move(file_kind)) {
    if (options.max_row_errors) {
      limit_ = *options.max_row_errors;
    } else {
      limit_ = options.mode == ParseMode::Strict ? 0 : std::numeric_limits<std::size_t>::max();
    }
  }

  void add(std::size_t line, Errc code, std::string message) {
    issues_.push_back({line, code, message});
    if (issues_.size() > limit_) {
      std::string text = kind_ + " line " + std::to_string(line) + ": " + message;
      if (issues_.size() > 1) text += " (" + std::to_string(issues_.size()) + " row errors)";
      throw Error(code, text);
    }
  }

  std::vector<RowIssue> take() { return std::move(issues_); }

 private:
  std::string kind_;
  std::size_t limit_ = 0;
  std::vector<RowIssue> issues_;
};

// Signals a rejected row inside the per-row lambdas.
struct RowReject {
  Errc code;
  std::string message;
};

std::size_t require_column(const csv::Row& header, std::string_view name, std::string_view kind) {
  auto col = csv::find_column(header, name);
  if (!col) {
    throw Error(Errc::MissingColumn, std::string(kind) + ": column '" + std::string(name) + "' not found");
  }
  return *col;
}

const std::string& field(const csv::Row& row, std::size_t col) {
  static const std::string empty;
  return col < row.size() ? row[col] : empty;
}

std::string slurp(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

char pick_delimiter(const ParseOptions& options, std::string_view text) {
  return options.delimiter ? options.delimiter : csv::detect_delimiter(text);
}

// "Software (Q1)" -> "Software"; other parentheticals are part of the name.
std::string strip_quartile_suffix(std::string_view name) {
  name = text::trim(name);
  if (name.size() >= 4 && name.back() == ')') {
    auto open = name.rfind('(');
    if (open != std::string_view::npos) {
      auto inner = name.substr(open + 1, name.size() - open - 2);
      if (inner.size() == 2 && (inner[0] == 'Q' || inner[0] == 'q') && inner[1] >= '1' &&
          inner[1] <= '4') {
        name = text::trim(name.substr(0, open));
      }
    }
  }
  return std::string(name);
}

Issn issn_or_reject(std::string_view raw) {
  try {
    return normalize_issn(raw);
  } catch (const Error& e) {
    throw RowReject{e.code(), e.what()};
  }
}

}  // namespace

Parsed<SourceRecord> parse_scimago_csv(std::string_view text, const ParseOptions& options) {
  const AsjcTable& asjc = options.asjc ? *options.asjc : AsjcTable::builtin();
  auto table = csv::read_table(text, pick_delimiter(options, text));
  const std::string_view kind = "SCImago export";
  auto c_id = require_column(table.header, "Sourceid", kind);
  auto c_title = require_column(table.header, "Title", kind);
  auto c_type = require_column(table.header, "Type", kind);
  auto c_issn = require_column(table.header, "Issn", kind);
  auto c_sjr = require_column(table.header, "SJR", kind);
  auto c_cat = require_column(table.header, "Categories", kind);

  Parsed<SourceRecord> out;
  IssueSink sink(options, std::string(kind));
  std::set<std::string> seen;

  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const auto line = table.line_numbers[i];
    try {
      SourceRecord rec;
      rec.source_id = std::string(text::trim(field(row, c_id)));
      if (rec.source_id.empty()) throw RowReject{Errc::RowParseError, "empty Sourceid"};
      if (seen.count(rec.source_id)) {
        throw RowReject{Errc::RowParseError, "duplicate Sourceid '" + rec.source_id + "'"};
      }
      rec.title = std::string(text::trim(field(row, c_title)));

      auto type = parse_source_type(field(row, c_type));
      if (!type) {
        throw RowReject{Errc::UnknownEnumValue, "unknown Type '" + field(row, c_type) + "'"};
      }
      rec.source_type = *type;

      for (const auto& piece : text::split(field(row, c_issn), ',')) {
        auto raw = text::trim(piece);
        if (raw.empty() || raw == "-") continue;
        rec.issns.insert(issn_or_reject(raw));
      }

      auto sjr_raw = text::trim(field(row, c_sjr));
      if (!sjr_raw.empty()) {
        auto sjr = text::parse_decimal(sjr_raw, options.decimal);
        if (!sjr) throw RowReject{Errc::RowParseError, "bad SJR '" + std::string(sjr_raw) + "'"};
        if (*sjr < 0.0) throw RowReject{Errc::RowParseError, "negative SJR"};
        rec.sjr = *sjr;
      }

      for (const auto& piece : text::split(field(row, c_cat), ';')) {
        auto name = strip_quartile_suffix(piece);
        if (name.empty()) continue;
        if (auto code = asjc.code_for(name)) {
          rec.categories.insert(AsjcCode{*code, name});
        } else {
          out.warnings.push_back("SCImago export line " + std::to_string(line) +
                                 ": unknown category '" + name + "'");
        }
      }

      seen.insert(rec.source_id);
      out.records.push_back(std::move(rec));
    } catch (const RowReject& reject) {
      sink.add(line, reject.code, reject.message);
    }
  }
  out.issues = sink.take();
  return out;
}

Parsed<SourceRecord> parse_scimago_csv(std::istream& in, const ParseOptions& options) {
  return parse_scimago_csv(slurp(in), options);
}

Parsed<SourceRecord> parse_source_list(std::string_view text, const ParseOptions& options) {
  const AsjcTable& asjc = options.asjc ? *options.asjc : AsjcTable::builtin();
  auto table = csv::read_table(text, options.delimiter ? options.delimiter : ',');
  const std::string_view kind = "source list";
  auto c_id = require_column(table.header, "source_id", kind);
  auto c_title = require_column(table.header, "title", kind);
  auto c_issn = require_column(table.header, "issn", kind);
  auto c_eissn = require_column(table.header, "e_issn", kind);
  auto c_type = require_column(table.header, "type", kind);
  auto c_status = require_column(table.header, "status", kind);
  auto c_codes = require_column(table.header, "asjc_codes", kind);

  Parsed<SourceRecord> out;
  IssueSink sink(options, std::string(kind));
  std::set<std::string> seen;

  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const auto line = table.line_numbers[i];
    try {
      SourceRecord rec;
      rec.source_id = std::string(text::trim(field(row, c_id)));
      if (rec.source_id.empty()) throw RowReject{Errc::RowParseError, "empty source_id"};
      if (seen.count(rec.source_id)) {
        throw RowReject{Errc::RowParseError, "duplicate source_id '" + rec.source_id + "'"};
      }
      rec.title = field(row, c_title);

      for (auto col : {c_issn, c_eissn}) {
        auto raw = text::trim(field(row, col));
        if (!raw.empty()) rec.issns.insert(issn_or_reject(raw));
      }

      auto type = parse_source_type(field(row, c_type));
      if (!type) {
        throw RowReject{Errc::UnknownEnumValue, "unknown type '" + field(row, c_type) + "'"};
      }
      rec.source_type = *type;

      auto status = parse_source_status(field(row, c_status));
      if (!status) {
        throw RowReject{Errc::UnknownEnumValue, "unknown status '" + field(row, c_status) + "'"};
      }
      rec.status = *status;

      for (const auto& piece : text::split(field(row, c_codes), ';')) {
        auto raw = text::trim(piece);
        if (raw.empty()) continue;
        auto code = text::parse_integer(raw);
        if (!code || *code < 1000 || *code > 9999) {
          throw RowReject{Errc::RowParseError, "bad ASJC code '" + std::string(raw) + "'"};
        }
        int c = static_cast<int>(*code);
        rec.categories.insert(AsjcCode{c, asjc.name_for(c)});
      }

      seen.insert(rec.source_id);
      out.records.push_back(std::move(rec));
    } catch (const RowReject& reject) {
      sink.add(line, reject.code, reject.message);
    }
  }
  out.issues = sink.take();
  return out;
}

Parsed<SourceRecord> parse_source_list(std::istream& in, const ParseOptions& options) {
  return parse_source_list(slurp(in), options);
}

std::string emit_source_list(std::span<const SourceRecord> records) {
  std::string out = "source_id,title,issn,e_issn,type,status,asjc_codes\n";
  for (const auto& rec : records) {
    if (!rec.status) {
      throw Error(Errc::InvalidArgument, "source '" + rec.source_id + "' has no status");
    }
    if (rec.issns.size() > 2) {
      throw Error(Errc::InvalidArgument, "source '" + rec.source_id + "' has more than two ISSNs");
    }
    std::vector<std::string> issns;
    for (const auto& issn : rec.issns) issns.push_back(issn.str());
    issns.resize(2);
    std::string codes;
    for (const auto& cat : rec.categories) {
      if (!codes.empty()) codes.push_back(';');
      codes += std::to_string(cat.code);
    }
    out += csv::format_row({rec.source_id, rec.title, issns[0], issns[1],
                            std::string(to_string(rec.source_type)),
                            std::string(to_string(*rec.status)), codes});
  }
  return out;
}

Parsed<ExpertEntry> parse_expert_csv(std::string_view text, const ParseOptions& options) {
  const std::string_view kind = "expert ranking";
  if (text::trim(text).empty()) throw Error(Errc::EmptyFile, "expert ranking is empty");
  std::vector<std::size_t> lines;
  auto rows = csv::read_rows(text, options.delimiter ? options.delimiter : ',', &lines);
  if (rows.empty()) throw Error(Errc::EmptyFile, "expert ranking is empty");

  bool has_header = !text::parse_integer(rows.front().front()).has_value();
  std::optional<std::size_t> c_id;
  std::size_t c_title = 1, c_acronym = 2, c_rank = 3;
  std::size_t first_data = 0;
  if (has_header) {
    const auto& header = rows.front();
    c_id = csv::find_column(header, "entry_id");
    c_title = require_column(header, "title", kind);
    c_acronym = require_column(header, "acronym", kind);
    c_rank = require_column(header, "rank", kind);
    first_data = 1;
  } else {
    if (rows.front().size() < 4) {
      throw Error(Errc::MissingColumn,
                  "expert ranking: headerless rows need entry_id,title,acronym,rank");
    }
    c_id = 0;
  }
  std::size_t needed = std::max({c_title, c_acronym, c_rank, c_id.value_or(0)}) + 1;

  Parsed<ExpertEntry> out;
  IssueSink sink(options, std::string(kind));
  std::set<std::string> seen;
  for (std::size_t i = first_data; i < rows.size(); ++i) {
    const auto& row = rows[i];
    try {
      if (row.size() < needed) throw RowReject{Errc::RowParseError, "too few fields"};
      ExpertEntry entry;
      entry.entry_id = c_id ? std::string(text::trim(row[*c_id]))
                            : std::to_string(i - first_data + 1);
      if (entry.entry_id.empty()) throw RowReject{Errc::RowParseError, "empty entry_id"};
      if (seen.count(entry.entry_id)) {
        throw RowReject{Errc::RowParseError, "duplicate entry_id '" + entry.entry_id + "'"};
      }
      entry.title = std::string(text::trim(row[c_title]));
      if (entry.title.empty()) throw RowReject{Errc::RowParseError, "empty title"};
      auto acronym = text::trim(row[c_acronym]);
      if (!acronym.empty()) entry.acronym = std::string(acronym);
      entry.rank_label = row[c_rank];
      seen.insert(entry.entry_id);
      out.records.push_back(std::move(entry));
    } catch (const RowReject& reject) {
      sink.add(lines[i], reject.code, reject.message);
    }
  }
  out.issues = sink.take();
  return out;
}

Parsed<ExpertEntry> parse_expert_csv(std::istream& in, const ParseOptions& options) {
  return parse_expert_csv(slurp(in), options);
}

Parsed<PubCount> parse_pubcounts(std::string_view text, const ParseOptions& options) {
  auto table = csv::read_table(text, options.delimiter ? options.delimiter : ',');
  const std::string_view kind = "publication counts";
  auto c_id = require_column(table.header, "source_id", kind);
  auto c_code = require_column(table.header, "asjc_code", kind);
  auto c_count = require_column(table.header, "publication_count", kind);

  Parsed<PubCount> out;
  IssueSink sink(options, std::string(kind));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    try {
      PubCount pc;
      pc.source_id = std::string(text::trim(field(row, c_id)));
      if (pc.source_id.empty()) throw RowReject{Errc::RowParseError, "empty source_id"};
      auto code = text::parse_integer(field(row, c_code));
      if (!code || *code < 1000 || *code > 9999) {
        throw RowReject{Errc::RowParseError, "bad asjc_code '" + field(row, c_code) + "'"};
      }
      pc.category = AsjcCode{static_cast<int>(*code), std::nullopt};
      auto count = text::parse_integer(field(row, c_count));
      if (!count || *count < 0) {
        throw RowReject{Errc::RowParseError,
                        "bad publication_count '" + field(row, c_count) + "'"};
      }
      pc.count = *count;
      out.records.push_back(std::move(pc));
    } catch (const RowReject& reject) {
      sink.add(table.line_numbers[i], reject.code, reject.message);
    }
  }
  out.issues = sink.take();
  return out;
}

Parsed<PubCount> parse_pubcounts(std::istream& in, const ParseOptions& options) {
  return parse_pubcounts(slurp(in), options);
}

MergeResult merge_sources(std::span<const SourceRecord> scimago,
                          std::span<const SourceRecord> source_list, ParseMode mode) {
  MergeResult result;
  auto report = [&](std::string message) {
    if (mode == ParseMode::Strict) throw Error(Errc::DuplicateJoinKey, message);
    result.issues.push_back({0, Errc::DuplicateJoinKey, std::move(message)});
  };

  std::map<std::string, std::size_t> by_id;
  std::map<Issn, std::size_t> by_issn;
  for (std::size_t i = 0; i < source_list.size(); ++i) {
    const auto& rec = source_list[i];
    if (!by_id.emplace(rec.source_id, i).second) {
      report("source_id '" + rec.source_id + "' appears twice in the source list");
    }
    for (const auto& issn : rec.issns) {
      auto [it, inserted] = by_issn.emplace(issn, i);
      if (!inserted && it->second != i) {
        report("ISSN " + issn.str() + " claimed by '" + source_list[it->second].source_id +
               "' and '" + rec.source_id + "'");
      }
    }
  }

  std::set<std::size_t> used;
  for (const auto& sci : scimago) {
    std::optional<std::size_t> match;
    if (auto it = by_id.find(sci.source_id); it != by_id.end()) {
      match = it->second;
    } else {
      for (const auto& issn : sci.issns) {
        if (auto jt = by_issn.find(issn); jt != by_issn.end()) {
          match = jt->second;
          break;
        }
      }
    }

    SourceRecord joined;
    if (match) {
      if (!used.insert(*match).second) {
        report("source '" + source_list[*match].source_id + "' joined by more than one SCImago row");
        continue;
      }
      const auto& listed = source_list[*match];
      joined = listed;
      if (joined.title.empty()) joined.title = sci.title;
      joined.issns.insert(sci.issns.begin(), sci.issns.end());
      joined.sjr = sci.sjr;
      for (const auto& cat : sci.categories) {
        auto [it, inserted] = joined.categories.insert(cat);
        if (!inserted && !it->name && cat.name) {
          auto hint = joined.categories.erase(it);
          joined.categories.insert(hint, cat);
        }
      }
    } else {
      ++result.scimago_only;
      joined = sci;
    }

    if (!joined.sjr) continue;
    switch (joined.source_type) {
      case SourceType::ConferenceProceedings:
        if (joined.status == SourceStatus::Ongoing) result.conferences.push_back(std::move(joined));
        break;
      case SourceType::Journal:
      case SourceType::BookSeries:
        result.rank_population.push_back(std::move(joined));
        break;
      case SourceType::TradeJournal:
        break;
    }
  }
  return result;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(Errc::IoFailure, "error while reading '" + path + "'");
  return buf.str();
}

}  // namespace confrank::ingest

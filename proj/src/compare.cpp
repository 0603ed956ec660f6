#include "confrank/compare.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "confrank/csv.hpp"
#include "confrank/error.hpp"
#include "confrank/text.hpp"

namespace confrank::compare {

namespace {

std::string label_key(std::string_view label) {
  std::string out;
  for (char c : label) {
    if (c == ' ' || c == '\t') continue;
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> words = {
      "proceedings", "proceeding", "of", "the", "international", "annual", "conference",
      "conferences", "on", "and", "in", "for",
      "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth", "ninth",
      "tenth", "eleventh", "twelfth", "thirteenth", "fourteenth", "fifteenth", "sixteenth",
      "seventeenth", "eighteenth", "nineteenth", "twentieth", "thirtieth", "fortieth",
      "fiftieth", "sixtieth"};
  return words;
}

// Society and publisher names that appear capitalized in many titles.
const std::unordered_set<std::string>& publisher_tokens() {
  static const std::unordered_set<std::string> words = {"acm", "ieee", "ifip", "siam", "iet",
                                                         "spie", "aip", "iop", "usenix"};
  return words;
}

bool is_word_char(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

bool is_ordinal_number(const std::string& token) {
  if (token.size() < 3) return false;
  auto suffix = token.substr(token.size() - 2);
  if (suffix != "st" && suffix != "nd" && suffix != "rd" && suffix != "th") return false;
  return std::all_of(token.begin(), token.end() - 2,
                     [](unsigned char c) { return std::isdigit(c); });
}

bool is_year(const std::string& token) {
  return token.size() == 4 && std::all_of(token.begin(), token.end(),
                                          [](unsigned char c) { return std::isdigit(c); }) &&
         (token.starts_with("19") || token.starts_with("20"));
}

std::string strip_parentheticals(std::string_view name) {
  std::string out;
  int depth = 0;
  for (char c : name) {
    if (c == '(' || c == '[') {
      ++depth;
      out.push_back(' ');
    } else if ((c == ')' || c == ']') && depth > 0) {
      --depth;
    } else if (depth == 0) {
      out.push_back(c);
    }
  }
  return out;
}

// Tokens as written, split on non-word characters.
std::vector<std::string> split_words(std::string_view name) {
  std::vector<std::string> out;
  std::string current;
  for (char c : name) {
    if (is_word_char(static_cast<unsigned char>(c))) {
      current.push_back(c);
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

// Capitalized tokens of length >= 2 that look like venue acronyms ("SIGMOD").
std::set<std::string> acronym_like_tokens(std::string_view title) {
  std::set<std::string> out;
  for (const auto& word : split_words(title)) {
    if (word.size() < 2) continue;
    bool has_upper = false;
    bool ok = true;
    for (unsigned char c : word) {
      if (std::isupper(c)) {
        has_upper = true;
      } else if (!std::isdigit(c)) {
        ok = false;
        break;
      }
    }
    if (!ok || !has_upper) continue;
    auto lower = text::to_lower(word);
    if (!publisher_tokens().count(lower)) out.insert(std::move(lower));
  }
  return out;
}

int method_rank(MatchMethod m) { return static_cast<int>(m); }

struct Candidate {
  std::size_t conf = 0;
  std::size_t entry = 0;
  MatchMethod method = MatchMethod::TokenOverlap;
  double score = 0.0;
};

}  // namespace

RankMapping RankMapping::core_default() { return RankMapping({"A*", "A", "B", "C"}); }

RankMapping RankMapping::from_labels(std::array<std::string, 4> labels) {
  std::set<std::string> keys;
  for (const auto& l : labels) {
    auto key = label_key(l);
    if (key.empty()) throw Error(Errc::InvalidArgument, "empty rank label in mapping");
    if (!keys.insert(key).second) {
      throw Error(Errc::InvalidArgument, "rank label '" + l + "' appears twice in mapping");
    }
  }
  return RankMapping(std::move(labels));
}

std::optional<std::size_t> RankMapping::column_for(std::string_view raw_label) const {
  auto key = label_key(raw_label);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (label_key(labels_[i]) == key) return i;
  }
  return std::nullopt;
}

std::vector<std::string> raw_tokens(std::string_view name) {
  auto words = split_words(name);
  for (auto& w : words) w = text::to_lower(w);
  return words;
}

std::vector<std::string> normalize_venue_name(std::string_view name) {
  std::vector<std::string> out;
  for (auto& token : raw_tokens(strip_parentheticals(name))) {
    if (stopwords().count(token) || is_ordinal_number(token) || is_year(token)) continue;
    out.push_back(std::move(token));
  }
  if (out.empty()) {
    throw Error(Errc::EmptyAfterNormalization,
                "'" + std::string(name) + "' has no tokens after normalization");
  }
  return out;
}

std::vector<std::string> venue_tokens(std::string_view name) {
  try {
    return normalize_venue_name(name);
  } catch (const Error& e) {
    if (e.code() != Errc::EmptyAfterNormalization) throw;
    return raw_tokens(name);
  }
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::set<std::string> sa(a.begin(), a.end());
  std::set<std::string> sb(b.begin(), b.end());
  if (sa.empty() && sb.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& t : sa) common += sb.count(t);
  return static_cast<double>(common) / static_cast<double>(sa.size() + sb.size() - common);
}

std::vector<Override> parse_overrides(std::string_view text) {
  auto table = csv::read_table(text, ',');
  auto need = [&](std::string_view name) {
    auto col = csv::find_column(table.header, name);
    if (!col) {
      throw Error(Errc::MissingColumn, "override file: column '" + std::string(name) + "' not found");
    }
    return *col;
  };
  auto c_src = need("source_id");
  auto c_entry = need("entry_id");
  auto c_action = need("action");

  std::vector<Override> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    auto where = "override file line " + std::to_string(table.line_numbers[i]) + ": ";
    auto get = [&](std::size_t col) {
      return col < row.size() ? std::string(text::trim(row[col])) : std::string();
    };
    Override o;
    o.source_id = get(c_src);
    o.entry_id = get(c_entry);
    auto action = text::to_lower(get(c_action));
    if (o.source_id.empty()) throw Error(Errc::RowParseError, where + "empty source_id");
    if (action == "match") {
      o.action = OverrideAction::Match;
      if (o.entry_id.empty()) throw Error(Errc::RowParseError, where + "match without entry_id");
    } else if (action == "exclude") {
      o.action = OverrideAction::Exclude;
    } else if (action == "aggregator") {
      o.action = OverrideAction::Aggregator;
    } else {
      throw Error(Errc::UnknownEnumValue, where + "unknown action '" + action + "'");
    }
    if (o.action != OverrideAction::Match && !o.entry_id.empty()) {
      throw Error(Errc::RowParseError, where + "entry_id must be empty for " + action);
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::string_view to_string(MatchMethod method) {
  switch (method) {
    case MatchMethod::Override: return "override";
    case MatchMethod::AcronymExact: return "acronym_exact";
    case MatchMethod::TitleExact: return "title_exact";
    case MatchMethod::TokenOverlap: return "token_overlap";
  }
  return "token_overlap";
}

std::optional<MatchMethod> parse_match_method(std::string_view s) {
  for (auto m : {MatchMethod::Override, MatchMethod::AcronymExact, MatchMethod::TitleExact,
                 MatchMethod::TokenOverlap}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

MatchOutcome match_expert(std::span<const SourceRecord> conferences,
                          std::span<const ExpertEntry> entries,
                          std::span<const Override> overrides, double threshold) {
  if (!(threshold > 0.0) || threshold > 1.0) {
    throw Error(Errc::InvalidArgument, "Jaccard threshold must lie in (0, 1]");
  }

  std::unordered_map<std::string, std::size_t> entry_index;
  for (std::size_t i = 0; i < entries.size(); ++i) entry_index.emplace(entries[i].entry_id, i);

  // One effective override per source; identical repeats are tolerated.
  std::map<std::string, Override> by_source;
  std::map<std::string, std::string> entry_claimed_by;
  for (const auto& o : overrides) {
    auto [it, inserted] = by_source.emplace(o.source_id, o);
    if (!inserted) {
      if (it->second.action != o.action || it->second.entry_id != o.entry_id) {
        throw Error(Errc::AmbiguousOverride,
                    "conflicting override rows for source '" + o.source_id + "'");
      }
      continue;
    }
    if (o.action != OverrideAction::Match) continue;
    if (!entry_index.count(o.entry_id)) {
      throw Error(Errc::UnknownReference, "override for source '" + o.source_id +
                                              "' names unknown entry '" + o.entry_id + "'");
    }
    auto [ct, fresh] = entry_claimed_by.emplace(o.entry_id, o.source_id);
    if (!fresh) {
      throw Error(Errc::AmbiguousOverride, "entry '" + o.entry_id + "' overridden onto both '" +
                                               ct->second + "' and '" + o.source_id + "'");
    }
  }

  struct EntryFeatures {
    std::vector<std::string> tokens;
    std::string acronym;
    std::set<std::string> acronym_tokens;
  };
  std::vector<EntryFeatures> features(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    features[i].tokens = venue_tokens(entries[i].title);
    if (entries[i].acronym) {
      auto acronym = text::to_lower(text::trim(*entries[i].acronym));
      if (acronym.size() >= 2) features[i].acronym = acronym;
      for (auto& t : raw_tokens(acronym)) features[i].acronym_tokens.insert(std::move(t));
    }
  }

  MatchOutcome out;
  std::vector<Candidate> candidates;
  std::vector<bool> conf_active(conferences.size(), true);

  for (std::size_t c = 0; c < conferences.size(); ++c) {
    const auto& conf = conferences[c];
    if (auto it = by_source.find(conf.source_id); it != by_source.end()) {
      const auto& o = it->second;
      switch (o.action) {
        case OverrideAction::Match:
          candidates.push_back({c, entry_index.at(o.entry_id), MatchMethod::Override, 1.0});
          continue;
        case OverrideAction::Aggregator:
          out.aggregators.push_back(conf.source_id);
          conf_active[c] = false;
          continue;
        case OverrideAction::Exclude:
          out.excluded.push_back(conf.source_id);
          conf_active[c] = false;
          continue;
      }
    }

    auto title_raw = raw_tokens(conf.title);
    std::set<std::string> title_raw_set(title_raw.begin(), title_raw.end());
    auto conf_acronyms = acronym_like_tokens(conf.title);
    auto title_norm = venue_tokens(conf.title);

    std::vector<Candidate> acronym_hits, title_hits, overlap_hits;
    for (std::size_t e = 0; e < entries.size(); ++e) {
      if (entry_claimed_by.count(entries[e].entry_id)) continue;
      const auto& f = features[e];
      bool acronym_hit = !f.acronym.empty() && title_raw_set.count(f.acronym);
      if (!acronym_hit) {
        for (const auto& a : conf_acronyms) {
          if (f.acronym_tokens.count(a)) {
            acronym_hit = true;
            break;
          }
        }
      }
      if (acronym_hit) {
        acronym_hits.push_back({c, e, MatchMethod::AcronymExact, 1.0});
        continue;
      }
      if (f.tokens == title_norm) {
        title_hits.push_back({c, e, MatchMethod::TitleExact, 1.0});
        continue;
      }
      double score = jaccard(title_norm, f.tokens);
      if (score >= threshold) overlap_hits.push_back({c, e, MatchMethod::TokenOverlap, score});
    }
    auto& stage = !acronym_hits.empty() ? acronym_hits
                  : !title_hits.empty() ? title_hits
                                        : overlap_hits;
    candidates.insert(candidates.end(), stage.begin(), stage.end());
  }

  std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
    bool ao = a.method == MatchMethod::Override;
    bool bo = b.method == MatchMethod::Override;
    if (ao != bo) return ao;
    if (a.score != b.score) return a.score > b.score;
    if (a.method != b.method) return method_rank(a.method) < method_rank(b.method);
    const auto& sa = conferences[a.conf].source_id;
    const auto& sb = conferences[b.conf].source_id;
    if (sa != sb) return sa < sb;
    return entries[a.entry].entry_id < entries[b.entry].entry_id;
  });

  std::vector<bool> conf_taken(conferences.size(), false);
  std::vector<bool> entry_taken(entries.size(), false);
  for (const auto& cand : candidates) {
    if (conf_taken[cand.conf] || entry_taken[cand.entry]) continue;
    conf_taken[cand.conf] = true;
    entry_taken[cand.entry] = true;
    out.matches.push_back({conferences[cand.conf].source_id, entries[cand.entry].entry_id,
                           cand.method, cand.score});
  }
  std::sort(out.matches.begin(), out.matches.end(),
            [](const MatchResult& a, const MatchResult& b) { return a.source_id < b.source_id; });

  for (std::size_t c = 0; c < conferences.size(); ++c) {
    if (conf_active[c] && !conf_taken[c]) out.unmatched_conferences.push_back(conferences[c].source_id);
  }
  std::sort(out.unmatched_conferences.begin(), out.unmatched_conferences.end());
  std::sort(out.aggregators.begin(), out.aggregators.end());
  std::sort(out.excluded.begin(), out.excluded.end());
  for (std::size_t e = 0; e < entries.size(); ++e) {
    if (!entry_taken[e]) out.unmatched_entries.push_back(entries[e].entry_id);
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    double avg = static_cast<double>(i + 1 + j) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

namespace {

// Twice the centered average rank, which is always an integer:
// 2 * ((i + 1 + j) / 2) - (n + 1) for a tie group occupying sorted slots [i, j).
std::vector<long long> doubled_centered_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<long long> out(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    long long d = static_cast<long long>(i + j) - static_cast<long long>(n);
    for (std::size_t k = i; k < j; ++k) out[order[k]] = d;
    i = j;
  }
  return out;
}

}  // namespace

double spearman_avg_rank(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(Errc::InvalidArgument, "rank lists differ in length");
  }
  if (xs.size() < 2) throw Error(Errc::InvalidArgument, "need at least two pairs");
  // Integer sums of squares stay below 2^63 up to this length.
  if (xs.size() > 1'000'000) throw Error(Errc::InvalidArgument, "too many pairs");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::isnan(xs[i]) || std::isnan(ys[i])) throw Error(Errc::InvalidArgument, "NaN code");
  }

  auto dx = doubled_centered_ranks(xs);
  auto dy = doubled_centered_ranks(ys);
  long long sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < dx.size(); ++i) {
    sxy += dx[i] * dy[i];
    sxx += dx[i] * dx[i];
    syy += dy[i] * dy[i];
  }
  if (sxx == 0 || syy == 0) {
    throw Error(Errc::DegenerateInput, "correlation undefined for a constant list");
  }
  double rho = static_cast<double>(sxy) /
               std::sqrt(static_cast<double>(sxx) * static_cast<double>(syy));
  return std::clamp(rho, -1.0, 1.0);
}

long long ContingencyTable::core_total() const {
  long long total = 0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) total += cells[r][c];
  return total;
}

long long ContingencyTable::row_sum(std::size_t row) const {
  long long total = 0;
  for (auto v : cells.at(row)) total += v;
  return total;
}

long long ContingencyTable::col_sum(std::size_t col) const {
  long long total = 0;
  for (const auto& row : cells) total += row.at(col);
  return total;
}

ContingencyTable build_contingency(const std::map<std::string, Quartile>& quartiles,
                                   std::span<const MatchResult> matches,
                                   std::span<const ExpertEntry> entries,
                                   const RankMapping& mapping) {
  ContingencyTable table;
  for (std::size_t c = 0; c < 4; ++c) table.col_labels[c] = mapping.labels()[c];

  std::unordered_map<std::string, const ExpertEntry*> entry_by_id;
  for (const auto& e : entries) entry_by_id.emplace(e.entry_id, &e);

  std::set<std::string> matched_sources;
  std::set<std::string> matched_entries;
  for (const auto& m : matches) {
    auto q = quartiles.find(m.source_id);
    if (q == quartiles.end()) {
      throw Error(Errc::InvalidArgument, "matched source '" + m.source_id + "' has no quartile");
    }
    auto e = entry_by_id.find(m.entry_id);
    if (e == entry_by_id.end()) {
      throw Error(Errc::UnknownReference, "match names unknown entry '" + m.entry_id + "'");
    }
    auto col = mapping.column_for(e->second->rank_label).value_or(ContingencyTable::kNa);
    ++table.cells[classify::ordinal(q->second) - 1][col];
    matched_sources.insert(m.source_id);
    matched_entries.insert(m.entry_id);
  }
  for (const auto& [source_id, q] : quartiles) {
    if (!matched_sources.count(source_id)) ++table.cells[classify::ordinal(q) - 1][ContingencyTable::kNa];
  }
  for (const auto& e : entries) {
    if (matched_entries.count(e.entry_id)) continue;
    if (auto col = mapping.column_for(e.rank_label)) ++table.cells[ContingencyTable::kNa][*col];
  }
  return table;
}

std::pair<std::vector<double>, std::vector<double>> core_pairs(const ContingencyTable& table) {
  std::pair<std::vector<double>, std::vector<double>> out;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      for (long long k = 0; k < table.cells[r][c]; ++k) {
        out.first.push_back(static_cast<double>(r + 1));
        out.second.push_back(static_cast<double>(c + 1));
      }
    }
  }
  return out;
}

ComparisonStats compute_stats(const std::map<std::string, Quartile>& quartiles,
                              const MatchOutcome& outcome, std::span<const ExpertEntry> entries,
                              const RankMapping& mapping) {
  ComparisonStats stats;
  stats.contingency = build_contingency(quartiles, outcome.matches, entries, mapping);
  stats.n_matched = static_cast<std::size_t>(stats.contingency.core_total());
  stats.conferences_in_scope = quartiles.size();
  stats.overlap = quartiles.empty() ? 0.0 : overlap_stats(outcome.matches.size(), quartiles.size());
  auto [xs, ys] = core_pairs(stats.contingency);
  try {
    stats.spearman_rho = spearman_avg_rank(xs, ys);
  } catch (const Error& e) {
    stats.rho_undefined_reason = e.what();
  }
  return stats;
}

double overlap_stats(std::size_t matched, std::size_t in_scope) {
  if (in_scope == 0) throw Error(Errc::ZeroScope, "no conferences in scope");
  return static_cast<double>(matched) / static_cast<double>(in_scope);
}

std::string format_percent(double fraction) {
  return std::to_string(std::lround(fraction * 100.0)) + "%";
}

std::vector<CategoryShare> proceedings_share(std::span<const ShareInput> inputs, double floor) {
  std::vector<CategoryShare> out;
  for (const auto& in : inputs) {
    if (in.total <= 0) {
      throw Error(Errc::ZeroTotal, "category " + std::to_string(in.category.code) + " has no publications");
    }
    if (in.proceedings < 0 || in.proceedings > in.total) {
      throw Error(Errc::CountExceedsTotal,
                  "category " + std::to_string(in.category.code) + ": proceedings count out of range");
    }
    double share = static_cast<double>(in.proceedings) / static_cast<double>(in.total);
    if (share > floor) out.push_back({in.category, in.proceedings, in.total, share});
  }
  std::stable_sort(out.begin(), out.end(), [](const CategoryShare& a, const CategoryShare& b) {
    if (a.share != b.share) return a.share > b.share;
    return a.category.code < b.category.code;
  });
  return out;
}

std::vector<ShareInput> tally_shares(std::span<const SourceRecord> sources,
                                     std::span<const PubCount> counts) {
  std::map<int, ShareInput> tally;
  auto add = [&](const AsjcCode& cat, bool proceedings, long long n) {
    auto& t = tally[cat.code];
    if (!t.category.name) t.category = cat;
    t.total += n;
    if (proceedings) t.proceedings += n;
  };

  std::unordered_map<std::string, const SourceRecord*> by_id;
  for (const auto& s : sources) by_id.emplace(s.source_id, &s);

  if (counts.empty()) {
    for (const auto& s : sources) {
      for (const auto& cat : s.categories) {
        add(cat, s.source_type == SourceType::ConferenceProceedings, 1);
      }
    }
  } else {
    for (const auto& pc : counts) {
      auto it = by_id.find(pc.source_id);
      if (it == by_id.end()) continue;
      add(pc.category, it->second->source_type == SourceType::ConferenceProceedings, pc.count);
    }
  }

  std::vector<ShareInput> out;
  for (auto& [code, t] : tally) {
    if (t.total > 0) out.push_back(t);
  }
  return out;
}

}  // namespace confrank::compare

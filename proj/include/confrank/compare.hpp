#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "confrank/classify.hpp"
#include "confrank/records.hpp"

namespace confrank::compare {

using classify::Quartile;

// Quartile <-> expert grade correspondence. Column c (0-based) of the
// contingency table holds the label paired with quartile c + 1.
class RankMapping {
 public:
  // Q1<->A*, Q2<->A, Q3<->B, Q4<->C.
  static RankMapping core_default();
  // Exactly four distinct labels, best grade first. InvalidArgument otherwise.
  static RankMapping from_labels(std::array<std::string, 4> labels);

  // 0-based column for a raw label, or nullopt when it maps to NA. Matching
  // ignores case and whitespace ("A *" == "a*").
  std::optional<std::size_t> column_for(std::string_view raw_label) const;
  const std::string& label(Quartile q) const { return labels_[classify::ordinal(q) - 1]; }
  const std::array<std::string, 4>& labels() const { return labels_; }

 private:
  explicit RankMapping(std::array<std::string, 4> labels) : labels_(std::move(labels)) {}
  std::array<std::string, 4> labels_;
};

// Lowercases, drops parentheticals and punctuation, removes venue stopwords,
// ordinals and standalone years. Throws EmptyAfterNormalization when nothing
// is left.
std::vector<std::string> normalize_venue_name(std::string_view name);
// Lowercase alphanumeric tokens with no filtering.
std::vector<std::string> raw_tokens(std::string_view name);
// normalize_venue_name, falling back to raw_tokens on EmptyAfterNormalization.
std::vector<std::string> venue_tokens(std::string_view name);

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);

enum class OverrideAction { Match, Exclude, Aggregator };

struct Override {
  std::string source_id;
  std::string entry_id;  // empty unless action is Match
  OverrideAction action = OverrideAction::Match;
};

// Header `source_id,entry_id,action`. Any bad row throws with its line number.
std::vector<Override> parse_overrides(std::string_view text);

enum class MatchMethod { Override, AcronymExact, TitleExact, TokenOverlap };
std::string_view to_string(MatchMethod method);
std::optional<MatchMethod> parse_match_method(std::string_view s);

struct MatchResult {
  std::string source_id;
  std::string entry_id;
  MatchMethod method = MatchMethod::TokenOverlap;
  double score = 0.0;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

struct MatchOutcome {
  std::vector<MatchResult> matches;                // sorted by source_id
  std::vector<std::string> unmatched_conferences;  // sorted, excludes overridden-out sources
  std::vector<std::string> unmatched_entries;      // expert file order
  std::vector<std::string> aggregators;
  std::vector<std::string> excluded;
};

// Per conference the first stage with any candidate wins: override, acronym,
// normalized-title equality, then token-set Jaccard >= threshold. Candidates
// are resolved one-to-one in a single greedy pass ordered by (overrides
// first, score desc, stage, source_id, entry_id).
MatchOutcome match_expert(std::span<const SourceRecord> conferences,
                          std::span<const ExpertEntry> entries,
                          std::span<const Override> overrides, double threshold = 0.6);

// Average ranks for ties (1-based).
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of average-rank vectors. Throws InvalidArgument for
// mismatched lengths or fewer than two pairs, DegenerateInput when either
// list is constant.
double spearman_avg_rank(std::span<const double> xs, std::span<const double> ys);

struct ContingencyTable {
  static constexpr std::size_t kNa = 4;
  // Rows Q1..Q4, NA; columns are the mapping's grades, NA.
  std::array<std::array<long long, 5>, 5> cells{};
  std::array<std::string, 5> row_labels{"Q1", "Q2", "Q3", "Q4", "NA"};
  std::array<std::string, 5> col_labels{"A*", "A", "B", "C", "NA"};

  long long core_total() const;
  long long row_sum(std::size_t row) const;
  long long col_sum(std::size_t col) const;
};

// `quartiles` holds every in-scope conference. Matched pairs fill the core
// (or the NA column when the grade is unmappable), unmatched conferences the
// NA column and unmatched entries with a mappable grade the NA row.
ContingencyTable build_contingency(const std::map<std::string, Quartile>& quartiles,
                                   std::span<const MatchResult> matches,
                                   std::span<const ExpertEntry> entries,
                                   const RankMapping& mapping);

struct ComparisonStats {
  std::optional<double> spearman_rho;
  std::string rho_undefined_reason;
  std::size_t n_matched = 0;  // pairs in the 4x4 core, used for rho
  std::size_t conferences_in_scope = 0;
  double overlap = 0.0;
  ContingencyTable contingency;
};

ComparisonStats compute_stats(const std::map<std::string, Quartile>& quartiles,
                              const MatchOutcome& outcome, std::span<const ExpertEntry> entries,
                              const RankMapping& mapping);

// Expands the 4x4 core into (quartile code, grade code) pairs.
std::pair<std::vector<double>, std::vector<double>> core_pairs(const ContingencyTable& table);

// matched / in_scope; ZeroScope when in_scope is 0.
double overlap_stats(std::size_t matched, std::size_t in_scope);
// Whole percent, rounded half away from zero: 45/73 -> "62%".
std::string format_percent(double fraction);

struct ShareInput {
  AsjcCode category;
  long long proceedings = 0;
  long long total = 0;
};

struct CategoryShare {
  AsjcCode category;
  long long proceedings = 0;
  long long total = 0;
  double share = 0.0;
};

// Keeps categories whose share exceeds `floor`, largest share first. Throws
// ZeroTotal or CountExceedsTotal on inconsistent counts.
std::vector<CategoryShare> proceedings_share(std::span<const ShareInput> inputs,
                                             double floor = 0.10);

// Per-category proceedings/total tallies. With publication counts the tally
// is publication-weighted, otherwise each source counts once.
std::vector<ShareInput> tally_shares(std::span<const SourceRecord> sources,
                                     std::span<const PubCount> counts);

}  // namespace confrank::compare

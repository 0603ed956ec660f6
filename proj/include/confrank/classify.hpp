#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "confrank/error.hpp"
#include "confrank/records.hpp"

namespace confrank::classify {

// Q1 is the best quartile. The underlying value is the ordinal code 1..4, so
// a numerically smaller code ranks higher.
enum class Quartile : int { Q1 = 1, Q2 = 2, Q3 = 3, Q4 = 4 };

constexpr int ordinal(Quartile q) noexcept { return static_cast<int>(q); }
constexpr bool better_than(Quartile a, Quartile b) noexcept { return ordinal(a) < ordinal(b); }
Quartile quartile_from_ordinal(int code);  // InvalidArgument outside 1..4
std::string_view to_string(Quartile q);
std::optional<Quartile> parse_quartile(std::string_view s);

struct CategoryThresholds {
  AsjcCode category;
  std::size_t population_size = 0;
  // Minimum SJR of each quartile block, best block first.
  double q1_min = 0.0;
  double q2_min = 0.0;
  double q3_min = 0.0;
  double q4_min = 0.0;

  double block_min(Quartile q) const;
};

struct ScoredSource {
  std::string source_id;
  double sjr = 0.0;
};

// Sorts by SJR descending and splits ranks r = 1..N into blocks
// floor(4 * (r - 1) / N); each threshold is the minimum SJR of its block.
// Throws EmptyPopulation for N = 0 and PopulationTooSmall for N < 4.
CategoryThresholds compute_thresholds(const AsjcCode& category,
                                      std::span<const ScoredSource> population);

struct QuartileResult {
  Quartile quartile;
  bool clamped;  // sjr below the smallest SJR in the population
};

// Inclusive thresholds: a value equal to a block minimum lands in that block.
QuartileResult assign_quartile(double sjr, const CategoryThresholds& thresholds);

struct QuartileAssignment {
  std::string source_id;
  AsjcCode category;
  double sjr = 0.0;
  Quartile quartile = Quartile::Q4;
  bool clamped_below_q4 = false;
};

struct Unrankable {
  AsjcCode category;
  std::size_t population_size = 0;
};

struct ThresholdSet {
  std::map<int, CategoryThresholds> by_category;
  std::vector<Unrankable> unrankable;  // populations smaller than four
};

// Groups the population by category and computes thresholds for each.
// Records without SJR are ignored.
ThresholdSet build_thresholds(std::span<const SourceRecord> rank_population);

struct SkippedCategory {
  std::string source_id;
  AsjcCode category;
};

struct ClassifyException {
  std::string source_id;
  Errc reason;
  std::string detail;
};

struct ClassifyResult {
  std::vector<QuartileAssignment> assignments;  // sorted by source_id, category
  std::vector<SkippedCategory> skipped;          // category without thresholds
  std::vector<ClassifyException> exceptions;     // sources that could not be classified
};

ClassifyResult classify_conferences(std::span<const SourceRecord> conferences,
                                    const std::map<int, CategoryThresholds>& thresholds);

// Categories holding at least `share_threshold` of the source's publications,
// or the single most frequent one (lowest code on ties) when none qualifies.
// Counts for other sources are ignored. Throws NoPublications when the source
// has no counts or only zeros.
std::set<AsjcCode> deduce_categories(std::string_view source_id, std::span<const PubCount> counts,
                                     double share_threshold = 0.20);

// Throws EmptyAssignments for an empty list and InvalidArgument when the list
// mixes sources.
Quartile best_quartile(std::span<const QuartileAssignment> assignments);

// Number of categories -> number of conferences with that many.
std::map<std::size_t, std::size_t> category_multiplicity(std::span<const SourceRecord> conferences);

}  // namespace confrank::classify

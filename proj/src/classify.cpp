#include "confrank/classify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace confrank::classify {

Quartile quartile_from_ordinal(int code) {
  if (code < 1 || code > 4) {
    throw Error(Errc::InvalidArgument, "quartile code " + std::to_string(code) + " outside 1..4");
  }
  return static_cast<Quartile>(code);
}

std::string_view to_string(Quartile q) {
  switch (q) {
    case Quartile::Q1: return "Q1";
    case Quartile::Q2: return "Q2";
    case Quartile::Q3: return "Q3";
    case Quartile::Q4: return "Q4";
  }
  return "Q4";
}

std::optional<Quartile> parse_quartile(std::string_view s) {
  if (s.size() != 2 || (s[0] != 'Q' && s[0] != 'q') || s[1] < '1' || s[1] > '4') {
    return std::nullopt;
  }
  return static_cast<Quartile>(s[1] - '0');
}

double CategoryThresholds::block_min(Quartile q) const {
  switch (q) {
    case Quartile::Q1: return q1_min;
    case Quartile::Q2: return q2_min;
    case Quartile::Q3: return q3_min;
    case Quartile::Q4: return q4_min;
  }
  return q4_min;
}

CategoryThresholds compute_thresholds(const AsjcCode& category,
                                      std::span<const ScoredSource> population) {
  const std::size_t n = population.size();
  if (n == 0) {
    throw Error(Errc::EmptyPopulation, "category " + std::to_string(category.code));
  }
  if (n < 4) {
    throw Error(Errc::PopulationTooSmall, "category " + std::to_string(category.code) + " has " +
                                              std::to_string(n) + " ranked sources");
  }
  std::vector<double> sjr;
  sjr.reserve(n);
  for (const auto& s : population) {
    if (!(s.sjr >= 0.0) || !std::isfinite(s.sjr)) {
      throw Error(Errc::InvalidArgument, "source '" + s.source_id + "' has invalid SJR");
    }
    sjr.push_back(s.sjr);
  }
  std::sort(sjr.begin(), sjr.end(), std::greater<>());

  // Sorted descending, so each block's minimum is its last member.
  std::array<double, 4> mins{};
  for (std::size_t r = 1; r <= n; ++r) {
    mins[(4 * (r - 1)) / n] = sjr[r - 1];
  }

  CategoryThresholds t;
  t.category = category;
  t.population_size = n;
  t.q1_min = mins[0];
  t.q2_min = mins[1];
  t.q3_min = mins[2];
  t.q4_min = mins[3];
  if (!(t.q1_min >= t.q2_min && t.q2_min >= t.q3_min && t.q3_min >= t.q4_min)) {
    throw Error(Errc::InvalidArgument, "category " + std::to_string(category.code) +
                                           ": thresholds are not monotone");
  }
  return t;
}

QuartileResult assign_quartile(double sjr, const CategoryThresholds& t) {
  if (sjr >= t.q1_min) return {Quartile::Q1, false};
  if (sjr >= t.q2_min) return {Quartile::Q2, false};
  if (sjr >= t.q3_min) return {Quartile::Q3, false};
  return {Quartile::Q4, sjr < t.q4_min};
}

ThresholdSet build_thresholds(std::span<const SourceRecord> rank_population) {
  std::map<int, std::pair<AsjcCode, std::vector<ScoredSource>>> groups;
  for (const auto& rec : rank_population) {
    if (!rec.sjr) continue;
    for (const auto& cat : rec.categories) {
      auto& group = groups[cat.code];
      if (!group.first.name) group.first = cat;
      group.second.push_back({rec.source_id, *rec.sjr});
    }
  }

  ThresholdSet out;
  for (const auto& [code, group] : groups) {
    const auto& [category, members] = group;
    if (members.size() < 4) {
      out.unrankable.push_back({category, members.size()});
      continue;
    }
    out.by_category.emplace(code, compute_thresholds(category, members));
  }
  return out;
}

ClassifyResult classify_conferences(std::span<const SourceRecord> conferences,
                                    const std::map<int, CategoryThresholds>& thresholds) {
  ClassifyResult out;
  for (const auto& conf : conferences) {
    if (!conf.sjr) {
      out.exceptions.push_back({conf.source_id, Errc::InvalidArgument, "no SJR value"});
      continue;
    }
    if (conf.categories.empty()) {
      out.exceptions.push_back({conf.source_id, Errc::NoCategories, "no subject categories"});
      continue;
    }
    for (const auto& cat : conf.categories) {
      auto it = thresholds.find(cat.code);
      if (it == thresholds.end()) {
        out.skipped.push_back({conf.source_id, cat});
        continue;
      }
      auto result = assign_quartile(*conf.sjr, it->second);
      AsjcCode named = cat;
      if (!named.name) named.name = it->second.category.name;
      out.assignments.push_back(
          {conf.source_id, named, *conf.sjr, result.quartile, result.clamped});
    }
  }
  std::sort(out.assignments.begin(), out.assignments.end(),
            [](const QuartileAssignment& a, const QuartileAssignment& b) {
              if (a.source_id != b.source_id) return a.source_id < b.source_id;
              return a.category.code < b.category.code;
            });
  return out;
}

std::set<AsjcCode> deduce_categories(std::string_view source_id, std::span<const PubCount> counts,
                                     double share_threshold) {
  std::map<int, long long> per_code;
  long long total = 0;
  for (const auto& pc : counts) {
    if (pc.source_id != source_id) continue;
    if (pc.count < 0) {
      throw Error(Errc::InvalidArgument, "negative publication count for '" + pc.source_id + "'");
    }
    per_code[pc.category.code] += pc.count;
    total += pc.count;
  }
  if (total == 0) {
    throw Error(Errc::NoPublications, "no publications recorded for '" + std::string(source_id) + "'");
  }

  std::set<AsjcCode> out;
  for (const auto& [code, count] : per_code) {
    if (static_cast<double>(count) >= share_threshold * static_cast<double>(total)) {
      out.insert(AsjcCode{code, std::nullopt});
    }
  }
  if (out.empty()) {
    // std::map iterates in ascending code order, so the first maximum wins.
    auto best = per_code.begin();
    for (auto it = per_code.begin(); it != per_code.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    out.insert(AsjcCode{best->first, std::nullopt});
  }
  return out;
}

Quartile best_quartile(std::span<const QuartileAssignment> assignments) {
  if (assignments.empty()) throw Error(Errc::EmptyAssignments, "no assignments to aggregate");
  Quartile best = assignments.front().quartile;
  for (const auto& a : assignments) {
    if (a.source_id != assignments.front().source_id) {
      throw Error(Errc::InvalidArgument, "assignments mix sources '" +
                                             assignments.front().source_id + "' and '" +
                                             a.source_id + "'");
    }
    if (better_than(a.quartile, best)) best = a.quartile;
  }
  return best;
}

std::map<std::size_t, std::size_t> category_multiplicity(std::span<const SourceRecord> conferences) {
  std::map<std::size_t, std::size_t> histogram;
  for (const auto& conf : conferences) ++histogram[conf.categories.size()];
  return histogram;
}

}  // namespace confrank::classify

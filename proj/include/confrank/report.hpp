#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "confrank/asjc.hpp"
#include "confrank/classify.hpp"
#include "confrank/compare.hpp"
#include "confrank/score.hpp"

namespace confrank::report {

// --- thresholds -------------------------------------------------------------

// asjc_code,category_name,population_size,q1_min,q2_min,q3_min,q4_min ordered
// by code. Names come from the thresholds, falling back to `names`.
std::string emit_thresholds_csv(std::span<const classify::CategoryThresholds> thresholds,
                                const AsjcTable& names = AsjcTable::builtin());
std::vector<classify::CategoryThresholds> parse_thresholds_csv(std::string_view text);

// --- classified conferences -------------------------------------------------

struct ClassifiedRow {
  std::string source_id;
  std::string title;
  AsjcCode category;
  double sjr = 0.0;
  classify::Quartile quartile = classify::Quartile::Q4;
  bool clamped_below_q4 = false;
  classify::Quartile best_quartile = classify::Quartile::Q4;

  friend bool operator==(const ClassifiedRow&, const ClassifiedRow&) = default;
};

// One row per assignment with the source's best quartile attached.
std::vector<ClassifiedRow> make_classified_rows(std::span<const classify::QuartileAssignment> assignments,
                                                std::span<const SourceRecord> conferences);

// source_id,title,asjc_code,sjr,quartile,clamped_below_q4,best_quartile
// ordered by (source_id, asjc_code).
std::string emit_classified_csv(std::span<const ClassifiedRow> rows);
std::vector<ClassifiedRow> parse_classified_csv(std::string_view text);

// --- classification exceptions ---------------------------------------------

struct ExceptionRow {
  std::string source_id;
  std::string reason;  // error name, or "SkippedCategory"
  std::string detail;
};

std::string emit_exceptions_csv(std::span<const ExceptionRow> rows);
std::vector<ExceptionRow> parse_exceptions_csv(std::string_view text);

// --- comparison -------------------------------------------------------------

struct ComparisonDoc {
  compare::ComparisonStats stats;
  compare::MatchOutcome outcome;
};

std::string emit_comparison_json(const compare::ComparisonStats& stats,
                                 const compare::MatchOutcome& outcome);
ComparisonDoc parse_comparison_json(std::string_view text);

// --- scores and shares ------------------------------------------------------

struct ScoreRow {
  std::string source_id;
  std::string title;
  score::ScoreClass score_class = score::ScoreClass::OtherIndexed;
  score::Track track = score::Track::NaturalEngineeringLife;
  double points = 0.0;
};

// source_id,title,class,track,points
std::string emit_scores_csv(std::span<const ScoreRow> rows);
std::vector<ScoreRow> parse_scores_csv(std::string_view text);

// asjc_code,category_name,proceedings,total,share
std::string emit_shares_csv(std::span<const compare::CategoryShare> shares,
                            const AsjcTable& names = AsjcTable::builtin());
std::vector<compare::CategoryShare> parse_shares_csv(std::string_view text);

// --- charts and report ------------------------------------------------------

struct Bar {
  std::string label;
  double value = 0.0;
};

// Standalone SVG bar chart with a fixed viewBox. Bar heights are proportional
// to the values, the largest filling the plot area. Throws EmptySeries.
std::string emit_svg_bars(std::span<const Bar> series, std::string_view title,
                          std::string_view axis_label);

struct ReportInputs {
  std::vector<std::pair<std::string, std::string>> metadata;  // shown in order
  std::optional<std::vector<classify::CategoryThresholds>> thresholds;
  std::optional<std::vector<ClassifiedRow>> classified;
  std::optional<std::vector<ExceptionRow>> exceptions;
  std::optional<ComparisonDoc> comparison;
  std::optional<std::vector<ScoreRow>> scores;
  std::optional<std::vector<compare::CategoryShare>> shares;
};

std::string emit_markdown_report(const ReportInputs& inputs);

// Writes bytes verbatim; IoFailure carries the path.
void write_file(const std::string& path, std::string_view content);

}  // namespace confrank::report

#include "confrank/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "confrank/csv.hpp"
#include "confrank/error.hpp"
#include "confrank/text.hpp"

namespace confrank::report {

namespace {

using classify::Quartile;
using json = nlohmann::json;

struct Columns {
  const csv::Table& table;
  std::string kind;

  std::size_t operator()(std::string_view name) const {
    auto col = csv::find_column(table.header, name);
    if (!col) {
      throw Error(Errc::MissingColumn, kind + ": column '" + std::string(name) + "' not found");
    }
    return *col;
  }
};

std::string where(const std::string& kind, const csv::Table& table, std::size_t i) {
  return kind + " line " + std::to_string(table.line_numbers[i]) + ": ";
}

const std::string& cell(const csv::Row& row, std::size_t col, const std::string& context) {
  if (col >= row.size()) throw Error(Errc::RowParseError, context + "too few fields");
  return row[col];
}

double decimal_cell(const csv::Row& row, std::size_t col, const std::string& context) {
  auto v = text::parse_decimal(cell(row, col, context), text::DecimalMark::Point);
  if (!v) throw Error(Errc::RowParseError, context + "bad number '" + row[col] + "'");
  return *v;
}

long long integer_cell(const csv::Row& row, std::size_t col, const std::string& context) {
  auto v = text::parse_integer(cell(row, col, context));
  if (!v) throw Error(Errc::RowParseError, context + "bad integer '" + row[col] + "'");
  return *v;
}

Quartile quartile_cell(const csv::Row& row, std::size_t col, const std::string& context) {
  auto q = classify::parse_quartile(cell(row, col, context));
  if (!q) throw Error(Errc::UnknownEnumValue, context + "bad quartile '" + row[col] + "'");
  return *q;
}

AsjcCode asjc_cell(const csv::Row& row, std::size_t col, const std::string& context) {
  auto code = integer_cell(row, col, context);
  if (code < 1000 || code > 9999) throw Error(Errc::RowParseError, context + "bad asjc_code");
  return AsjcCode{static_cast<int>(code), std::nullopt};
}

std::string category_name(const AsjcCode& cat, const AsjcTable& names) {
  if (cat.name) return *cat.name;
  return names.name_for(cat.code).value_or("");
}

std::string md_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n' || c == '\r') out.push_back(' ');
    else out.push_back(c);
  }
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string category_display(const AsjcCode& cat) {
  auto name = cat.name ? *cat.name : AsjcTable::builtin().name_for(cat.code).value_or("");
  return name.empty() ? std::to_string(cat.code) : std::to_string(cat.code) + " " + name;
}

}  // namespace

std::string emit_thresholds_csv(std::span<const classify::CategoryThresholds> thresholds,
                                const AsjcTable& names) {
  std::vector<const classify::CategoryThresholds*> sorted;
  for (const auto& t : thresholds) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](auto* a, auto* b) { return a->category.code < b->category.code; });

  std::string out = "asjc_code,category_name,population_size,q1_min,q2_min,q3_min,q4_min\n";
  for (const auto* t : sorted) {
    out += csv::format_row({std::to_string(t->category.code), category_name(t->category, names),
                            std::to_string(t->population_size), text::format_decimal(t->q1_min),
                            text::format_decimal(t->q2_min), text::format_decimal(t->q3_min),
                            text::format_decimal(t->q4_min)});
  }
  return out;
}

std::vector<classify::CategoryThresholds> parse_thresholds_csv(std::string_view text) {
  auto table = csv::read_table(text, ',');
  Columns col{table, "thresholds"};
  auto c_code = col("asjc_code"), c_name = col("category_name"), c_n = col("population_size");
  auto c_q1 = col("q1_min"), c_q2 = col("q2_min"), c_q3 = col("q3_min"), c_q4 = col("q4_min");

  std::vector<classify::CategoryThresholds> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    auto ctx = where("thresholds", table, i);
    classify::CategoryThresholds t;
    t.category = asjc_cell(row, c_code, ctx);
    if (!cell(row, c_name, ctx).empty()) t.category.name = row[c_name];
    auto n = integer_cell(row, c_n, ctx);
    if (n < 4) throw Error(Errc::RowParseError, ctx + "population_size below 4");
    t.population_size = static_cast<std::size_t>(n);
    t.q1_min = decimal_cell(row, c_q1, ctx);
    t.q2_min = decimal_cell(row, c_q2, ctx);
    t.q3_min = decimal_cell(row, c_q3, ctx);
    t.q4_min = decimal_cell(row, c_q4, ctx);
    if (!(t.q1_min >= t.q2_min && t.q2_min >= t.q3_min && t.q3_min >= t.q4_min && t.q4_min >= 0)) {
      throw Error(Errc::RowParseError, ctx + "thresholds are not descending");
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<ClassifiedRow> make_classified_rows(
    std::span<const classify::QuartileAssignment> assignments,
    std::span<const SourceRecord> conferences) {
  std::map<std::string, std::string> titles;
  for (const auto& c : conferences) titles.emplace(c.source_id, c.title);
  std::map<std::string, Quartile> best;
  for (const auto& a : assignments) {
    auto [it, inserted] = best.emplace(a.source_id, a.quartile);
    if (!inserted && classify::better_than(a.quartile, it->second)) it->second = a.quartile;
  }

  std::vector<ClassifiedRow> rows;
  for (const auto& a : assignments) {
    auto title = titles.find(a.source_id);
    rows.push_back({a.source_id, title == titles.end() ? "" : title->second, a.category, a.sjr,
                    a.quartile, a.clamped_below_q4, best.at(a.source_id)});
  }
  return rows;
}

std::string emit_classified_csv(std::span<const ClassifiedRow> rows) {
  std::vector<const ClassifiedRow*> sorted;
  for (const auto& r : rows) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) {
    if (a->source_id != b->source_id) return a->source_id < b->source_id;
    return a->category.code < b->category.code;
  });

  std::string out = "source_id,title,asjc_code,sjr,quartile,clamped_below_q4,best_quartile\n";
  for (const auto* r : sorted) {
    out += csv::format_row({r->source_id, r->title, std::to_string(r->category.code),
                            text::format_decimal(r->sjr), std::string(classify::to_string(r->quartile)),
                            r->clamped_below_q4 ? "true" : "false",
                            std::string(classify::to_string(r->best_quartile))});
  }
  return out;
}

std::vector<ClassifiedRow> parse_classified_csv(std::string_view text) {
  auto table = csv::read_table(text, ',');
  Columns col{table, "classified"};
  auto c_id = col("source_id"), c_title = col("title"), c_code = col("asjc_code");
  auto c_sjr = col("sjr"), c_q = col("quartile"), c_clamp = col("clamped_below_q4");
  auto c_best = col("best_quartile");

  std::vector<ClassifiedRow> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    auto ctx = where("classified", table, i);
    ClassifiedRow r;
    r.source_id = cell(row, c_id, ctx);
    if (r.source_id.empty()) throw Error(Errc::RowParseError, ctx + "empty source_id");
    r.title = cell(row, c_title, ctx);
    r.category = asjc_cell(row, c_code, ctx);
    r.sjr = decimal_cell(row, c_sjr, ctx);
    r.quartile = quartile_cell(row, c_q, ctx);
    const auto& clamp = cell(row, c_clamp, ctx);
    if (clamp != "true" && clamp != "false") {
      throw Error(Errc::UnknownEnumValue, ctx + "clamped_below_q4 must be true or false");
    }
    r.clamped_below_q4 = clamp == "true";
    r.best_quartile = quartile_cell(row, c_best, ctx);
    out.push_back(std::move(r));
  }
  return out;
}

std::string emit_exceptions_csv(std::span<const ExceptionRow> rows) {
  std::string out = "source_id,reason,detail\n";
  for (const auto& r : rows) out += csv::format_row({r.source_id, r.reason, r.detail});
  return out;
}

std::vector<ExceptionRow> parse_exceptions_csv(std::string_view text) {
  auto table = csv::read_table(text, ',');
  Columns col{table, "exceptions"};
  auto c_id = col("source_id"), c_reason = col("reason"), c_detail = col("detail");
  std::vector<ExceptionRow> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto ctx = where("exceptions", table, i);
    const auto& row = table.rows[i];
    out.push_back({cell(row, c_id, ctx), cell(row, c_reason, ctx), cell(row, c_detail, ctx)});
  }
  return out;
}

std::string emit_comparison_json(const compare::ComparisonStats& stats,
                                 const compare::MatchOutcome& outcome) {
  json doc;
  doc["n_matched"] = stats.n_matched;
  doc["conferences_in_scope"] = stats.conferences_in_scope;
  doc["overlap"] = stats.overlap;
  doc["overlap_percent"] = compare::format_percent(stats.overlap);
  doc["spearman_rho"] = stats.spearman_rho ? json(*stats.spearman_rho) : json(nullptr);
  if (!stats.spearman_rho) doc["spearman_undefined_reason"] = stats.rho_undefined_reason;

  json cells = json::array();
  for (const auto& row : stats.contingency.cells) cells.push_back(row);
  doc["contingency"] = {{"row_labels", stats.contingency.row_labels},
                        {"col_labels", stats.contingency.col_labels},
                        {"cells", cells}};

  json matches = json::array();
  for (const auto& m : outcome.matches) {
    matches.push_back({{"source_id", m.source_id},
                       {"entry_id", m.entry_id},
                       {"method", compare::to_string(m.method)},
                       {"score", m.score}});
  }
  doc["matches"] = matches;
  doc["unmatched_conferences"] = outcome.unmatched_conferences;
  doc["unmatched_entries"] = outcome.unmatched_entries;
  doc["aggregators"] = outcome.aggregators;
  doc["excluded"] = outcome.excluded;
  return doc.dump(2) + "\n";
}

ComparisonDoc parse_comparison_json(std::string_view text) {
  ComparisonDoc out;
  try {
    auto doc = json::parse(text);
    auto& stats = out.stats;
    stats.n_matched = doc.at("n_matched").get<std::size_t>();
    stats.conferences_in_scope = doc.value("conferences_in_scope", std::size_t{0});
    stats.overlap = doc.at("overlap").get<double>();
    if (!doc.at("spearman_rho").is_null()) stats.spearman_rho = doc["spearman_rho"].get<double>();
    stats.rho_undefined_reason = doc.value("spearman_undefined_reason", std::string{});
    const auto& ct = doc.at("contingency");
    stats.contingency.row_labels = ct.at("row_labels").get<std::array<std::string, 5>>();
    stats.contingency.col_labels = ct.at("col_labels").get<std::array<std::string, 5>>();
    stats.contingency.cells = ct.at("cells").get<std::array<std::array<long long, 5>, 5>>();

    for (const auto& m : doc.at("matches")) {
      auto method = compare::parse_match_method(m.at("method").get<std::string>());
      if (!method) throw Error(Errc::UnknownEnumValue, "comparison JSON: unknown match method");
      out.outcome.matches.push_back({m.at("source_id").get<std::string>(),
                                     m.at("entry_id").get<std::string>(), *method,
                                     m.at("score").get<double>()});
    }
    out.outcome.unmatched_conferences = doc.at("unmatched_conferences").get<std::vector<std::string>>();
    out.outcome.unmatched_entries = doc.at("unmatched_entries").get<std::vector<std::string>>();
    out.outcome.aggregators = doc.value("aggregators", std::vector<std::string>{});
    out.outcome.excluded = doc.value("excluded", std::vector<std::string>{});
  } catch (const json::exception& e) {
    throw Error(Errc::RowParseError, std::string("comparison JSON: ") + e.what());
  }
  return out;
}

std::string emit_scores_csv(std::span<const ScoreRow> rows) {
  std::string out = "source_id,title,class,track,points\n";
  for (const auto& r : rows) {
    out += csv::format_row({r.source_id, r.title, std::string(score::to_string(r.score_class)),
                            std::string(score::to_string(r.track)), text::format_decimal(r.points)});
  }
  return out;
}

std::vector<ScoreRow> parse_scores_csv(std::string_view text) {
  auto table = csv::read_table(text, ',');
  Columns col{table, "scores"};
  auto c_id = col("source_id"), c_title = col("title"), c_class = col("class");
  auto c_track = col("track"), c_points = col("points");
  std::vector<ScoreRow> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto ctx = where("scores", table, i);
    const auto& row = table.rows[i];
    ScoreRow r;
    r.source_id = cell(row, c_id, ctx);
    r.title = cell(row, c_title, ctx);
    auto cls = score::parse_score_class(cell(row, c_class, ctx));
    if (!cls) throw Error(Errc::UnknownEnumValue, ctx + "bad class '" + row[c_class] + "'");
    r.score_class = *cls;
    auto track = score::parse_track(cell(row, c_track, ctx));
    if (!track) throw Error(Errc::UnknownTrack, ctx + "bad track '" + row[c_track] + "'");
    r.track = *track;
    r.points = decimal_cell(row, c_points, ctx);
    out.push_back(std::move(r));
  }
  return out;
}

std::string emit_shares_csv(std::span<const compare::CategoryShare> shares, const AsjcTable& names) {
  std::string out = "asjc_code,category_name,proceedings,total,share\n";
  for (const auto& s : shares) {
    out += csv::format_row({std::to_string(s.category.code), category_name(s.category, names),
                            std::to_string(s.proceedings), std::to_string(s.total),
                            text::format_decimal(s.share)});
  }
  return out;
}

std::vector<compare::CategoryShare> parse_shares_csv(std::string_view text) {
  auto table = csv::read_table(text, ',');
  Columns col{table, "shares"};
  auto c_code = col("asjc_code"), c_name = col("category_name"), c_p = col("proceedings");
  auto c_t = col("total"), c_s = col("share");
  std::vector<compare::CategoryShare> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto ctx = where("shares", table, i);
    const auto& row = table.rows[i];
    compare::CategoryShare s;
    s.category = asjc_cell(row, c_code, ctx);
    if (!cell(row, c_name, ctx).empty()) s.category.name = row[c_name];
    s.proceedings = integer_cell(row, c_p, ctx);
    s.total = integer_cell(row, c_t, ctx);
    s.share = decimal_cell(row, c_s, ctx);
    out.push_back(std::move(s));
  }
  return out;
}

std::string emit_svg_bars(std::span<const Bar> series, std::string_view title,
                          std::string_view axis_label) {
  if (series.empty()) throw Error(Errc::EmptySeries, "bar chart needs at least one value");
  double max_value = 0.0;
  for (const auto& b : series) {
    if (!(b.value >= 0.0) || !std::isfinite(b.value)) {
      throw Error(Errc::InvalidArgument, "bar '" + b.label + "' has a negative or invalid value");
    }
    max_value = std::max(max_value, b.value);
  }

  constexpr double kWidth = 800, kHeight = 480;
  constexpr double kLeft = 80, kRight = 20, kTop = 50, kBottom = 110;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double slot = plot_w / static_cast<double>(series.size());
  const double bar_w = slot * 0.7;
  const double baseline = kTop + plot_h;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\">\n"
      << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"#ffffff\"/>\n"
      << "  <text x=\"" << fixed(kWidth / 2) << "\" y=\"28\" font-size=\"18\" text-anchor=\"middle\">"
      << xml_escape(title) << "</text>\n"
      << "  <text x=\"20\" y=\"" << fixed(kTop + plot_h / 2) << "\" font-size=\"13\" "
      << "text-anchor=\"middle\" transform=\"rotate(-90 20 " << fixed(kTop + plot_h / 2) << ")\">"
      << xml_escape(axis_label) << "</text>\n"
      << "  <line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(baseline) << "\" x2=\""
      << fixed(kWidth - kRight) << "\" y2=\"" << fixed(baseline) << "\" stroke=\"#000000\"/>\n"
      << "  <line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop) << "\" x2=\"" << fixed(kLeft)
      << "\" y2=\"" << fixed(baseline) << "\" stroke=\"#000000\"/>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& b = series[i];
    double h = max_value > 0.0 ? plot_h * (b.value / max_value) : 0.0;
    double x = kLeft + slot * static_cast<double>(i) + (slot - bar_w) / 2;
    double cx = x + bar_w / 2;
    svg << "  <rect class=\"bar\" x=\"" << fixed(x) << "\" y=\"" << fixed(baseline - h)
        << "\" width=\"" << fixed(bar_w) << "\" height=\"" << fixed(h)
        << "\" fill=\"#4477aa\"><title>" << xml_escape(b.label) << ": "
        << text::format_decimal(b.value) << "</title></rect>\n"
        << "  <text x=\"" << fixed(cx) << "\" y=\"" << fixed(baseline - h - 4)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << xml_escape(text::format_decimal(b.value))
        << "</text>\n"
        << "  <text x=\"" << fixed(cx) << "\" y=\"" << fixed(baseline + 14)
        << "\" font-size=\"11\" text-anchor=\"end\" transform=\"rotate(-35 " << fixed(cx) << ' '
        << fixed(baseline + 14) << ")\">" << xml_escape(b.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string emit_markdown_report(const ReportInputs& in) {
  std::ostringstream md;
  md << "# Conference proceedings quartile report\n\n";
  md << "## Run parameters\n\n";
  if (in.metadata.empty()) {
    md << "No run parameters recorded.\n";
  } else {
    md << "| Parameter | Value |\n|---|---|\n";
    for (const auto& [k, v] : in.metadata) md << "| " << md_escape(k) << " | " << md_escape(v) << " |\n";
  }

  bool any_analysis = in.thresholds || in.classified || in.exceptions || in.comparison ||
                      in.scores || in.shares;
  if (!any_analysis) return md.str();

  if (in.thresholds) {
    md << "\n## Quartile thresholds by category\n\n";
    if (in.thresholds->empty()) {
      md << "No category had enough ranked journals and book series.\n";
    } else {
      md << "| ASJC | Category | Sources | Q1 min | Q2 min | Q3 min | Q4 min |\n"
         << "|---|---|---:|---:|---:|---:|---:|\n";
      for (const auto& t : *in.thresholds) {
        md << "| " << t.category.code << " | " << md_escape(t.category.name.value_or("")) << " | "
           << t.population_size << " | " << text::format_decimal(t.q1_min) << " | "
           << text::format_decimal(t.q2_min) << " | " << text::format_decimal(t.q3_min) << " | "
           << text::format_decimal(t.q4_min) << " |\n";
      }
    }
  }

  std::size_t clamped = 0;
  if (in.classified) {
    struct Dist {
      AsjcCode category;
      std::array<int, 4> counts{};
      int clamped = 0;
    };
    std::map<int, Dist> dist;
    std::set<std::string> sources;
    for (const auto& r : *in.classified) {
      auto& d = dist[r.category.code];
      if (!d.category.name) d.category = r.category;
      ++d.counts[classify::ordinal(r.quartile) - 1];
      if (r.clamped_below_q4) {
        ++d.clamped;
        ++clamped;
      }
      sources.insert(r.source_id);
    }
    md << "\n## Quartile distribution of conference proceedings\n\n";
    md << sources.size() << " proceedings received " << in.classified->size()
       << " category assignments.\n\n";
    if (!dist.empty()) {
      md << "| Category | Q1 | Q2 | Q3 | Q4 | Below Q4 minimum |\n|---|---:|---:|---:|---:|---:|\n";
      for (const auto& [code, d] : dist) {
        md << "| " << md_escape(category_display(d.category)) << " | " << d.counts[0] << " | "
           << d.counts[1] << " | " << d.counts[2] << " | " << d.counts[3] << " | " << d.clamped
           << " |\n";
      }
    }
  }

  md << "\n## Comparison with the expert ranking\n\n";
  if (!in.comparison || (in.comparison->outcome.matches.empty() &&
                         in.comparison->stats.contingency.core_total() == 0 &&
                         in.comparison->stats.conferences_in_scope == 0)) {
    md << "No comparison results were supplied; this section is omitted.\n";
  } else {
    const auto& st = in.comparison->stats;
    const auto& ct = st.contingency;
    md << "| |";
    for (const auto& l : ct.col_labels) md << ' ' << md_escape(l) << " |";
    md << "\n|---|---:|---:|---:|---:|---:|\n";
    for (std::size_t r = 0; r < 5; ++r) {
      md << "| " << md_escape(ct.row_labels[r]) << " |";
      for (std::size_t c = 0; c < 5; ++c) {
        if (r == compare::ContingencyTable::kNa && c == compare::ContingencyTable::kNa) {
          md << "  |";
        } else {
          md << ' ' << ct.cells[r][c] << " |";
        }
      }
      md << '\n';
    }
    md << "\n- Matched conferences: " << in.comparison->outcome.matches.size() << " of "
       << st.conferences_in_scope << " in scope (" << compare::format_percent(st.overlap) << ")\n";
    md << "- Pairs in the graded core: " << st.n_matched << '\n';
    if (st.spearman_rho) {
      md << "- Spearman rank correlation (average ranks): " << fixed(*st.spearman_rho, 3) << '\n';
    } else {
      md << "- Spearman rank correlation: undefined (" << md_escape(st.rho_undefined_reason) << ")\n";
    }
  }

  if (in.scores) {
    std::map<score::ScoreClass, std::pair<int, double>> by_class;
    for (const auto& s : *in.scores) {
      auto& [n, pts] = by_class[s.score_class];
      ++n;
      pts = s.points;
    }
    md << "\n## Scores\n\n";
    if (by_class.empty()) {
      md << "No scored sources.\n";
    } else {
      md << "| Class | Sources | Points per source |\n|---|---:|---:|\n";
      for (const auto& [cls, v] : by_class) {
        md << "| " << score::to_string(cls) << " | " << v.first << " | "
           << text::format_decimal(v.second) << " |\n";
      }
    }
  }

  if (in.shares) {
    md << "\n## Share of conference proceedings by category\n\n";
    if (in.shares->empty()) {
      md << "No category exceeds the share floor.\n";
    } else {
      md << "| Category | Proceedings | Total | Share |\n|---|---:|---:|---:|\n";
      for (const auto& s : *in.shares) {
        md << "| " << md_escape(category_display(s.category)) << " | " << s.proceedings << " | "
           << s.total << " | " << compare::format_percent(s.share) << " |\n";
      }
    }
  }

  md << "\n## Caveats\n\n";
  std::size_t skipped = 0, unclassified = 0;
  if (in.exceptions) {
    for (const auto& e : *in.exceptions) (e.reason == "SkippedCategory" ? skipped : unclassified)++;
  }
  std::size_t aggregators = in.comparison ? in.comparison->outcome.aggregators.size() : 0;
  md << "- Assignments below the Q4 minimum (clamped to Q4): " << clamped << '\n'
     << "- Conference categories skipped for lack of thresholds: " << skipped << '\n'
     << "- Conferences left unclassified: " << unclassified << '\n'
     << "- Aggregator sources removed from matching: " << aggregators << '\n';
  if (in.comparison && !in.comparison->outcome.aggregators.empty()) {
    md << "\nAggregators: ";
    const auto& a = in.comparison->outcome.aggregators;
    for (std::size_t i = 0; i < a.size(); ++i) md << (i ? ", " : "") << md_escape(a[i]);
    md << '\n';
  }
  return md.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoFailure, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw Error(Errc::IoFailure, "error while writing '" + path + "'");
}

}  // namespace confrank::report

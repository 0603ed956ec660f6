#include "confrank/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "confrank/classify.hpp"
#include "confrank/compare.hpp"
#include "confrank/digest.hpp"
#include "confrank/error.hpp"
#include "confrank/ingest.hpp"
#include "confrank/report.hpp"
#include "confrank/score.hpp"
#include "confrank/text.hpp"

namespace confrank::cli {

namespace {

namespace fs = std::filesystem;

struct ParseFlags {
  bool strict = false;
  bool lenient = false;
  std::optional<std::size_t> max_row_errors;
  std::string delimiter;
  std::string asjc_table;
};

void add_parse_flags(CLI::App* cmd, ParseFlags& flags) {
  auto* strict = cmd->add_flag("--strict", flags.strict, "Fail on the first bad row (default)");
  auto* lenient = cmd->add_flag("--lenient", flags.lenient, "Skip bad rows and report them");
  strict->excludes(lenient);
  cmd->add_option("--max-row-errors", flags.max_row_errors, "Row errors tolerated before failing");
  cmd->add_option("--delimiter", flags.delimiter, "SCImago delimiter: ';' or ',' (default: detect)")
      ->check(CLI::IsMember({";", ","}));
  cmd->add_option("--asjc-table", flags.asjc_table, "CSV asjc_code,name replacing the builtin table");
}

struct Context {
  std::ostream& out;
  std::ostream& err;
};

struct LoadedOptions {
  ingest::ParseOptions options;
  std::optional<AsjcTable> table;
};

// AsjcTable must outlive the options that point at it.
void configure(const ParseFlags& flags, LoadedOptions& loaded) {
  loaded.options.mode = flags.lenient ? ingest::ParseMode::Lenient : ingest::ParseMode::Strict;
  loaded.options.max_row_errors = flags.max_row_errors;
  if (!flags.delimiter.empty()) loaded.options.delimiter = flags.delimiter.front();
  if (!flags.asjc_table.empty()) {
    loaded.table = AsjcTable::from_csv(ingest::read_file(flags.asjc_table));
    loaded.options.asjc = &*loaded.table;
  }
}

template <class T>
void report_parse(const ingest::Parsed<T>& parsed, const std::string& path, Context& ctx) {
  for (const auto& w : parsed.warnings) ctx.err << "warning: " << path << ": " << w << '\n';
  for (const auto& issue : parsed.issues) {
    ctx.err << "skipped: " << path << " line " << issue.line << ": " << errc_name(issue.code)
            << ": " << issue.message << '\n';
  }
}

struct Inputs {
  std::vector<SourceRecord> source_list;
  ingest::MergeResult merged;
};

Inputs load_sources(const std::string& scimago_path, const std::string& sources_path,
                    const ingest::ParseOptions& options, Context& ctx) {
  auto scimago = ingest::parse_scimago_csv(ingest::read_file(scimago_path), options);
  report_parse(scimago, scimago_path, ctx);
  auto list_options = options;
  list_options.delimiter = 0;
  auto sources = ingest::parse_source_list(ingest::read_file(sources_path), list_options);
  report_parse(sources, sources_path, ctx);

  Inputs in;
  in.merged = ingest::merge_sources(scimago.records, sources.records, options.mode);
  for (const auto& issue : in.merged.issues) {
    ctx.err << "warning: " << errc_name(issue.code) << ": " << issue.message << '\n';
  }
  in.source_list = std::move(sources.records);
  return in;
}

// ---------------------------------------------------------------------------

struct ThresholdsArgs {
  std::string scimago, sources, out;
  ParseFlags parse;
};

int run_thresholds(const ThresholdsArgs& args, Context& ctx) {
  LoadedOptions loaded;
  configure(args.parse, loaded);
  auto in = load_sources(args.scimago, args.sources, loaded.options, ctx);
  auto set = classify::build_thresholds(in.merged.rank_population);
  for (const auto& u : set.unrankable) {
    ctx.err << "warning: category " << u.category.code << " has only " << u.population_size
            << " ranked sources; no thresholds\n";
  }
  std::vector<classify::CategoryThresholds> list;
  for (const auto& [code, t] : set.by_category) list.push_back(t);
  report::write_file(args.out, report::emit_thresholds_csv(list, loaded.table ? *loaded.table : AsjcTable::builtin()));
  ctx.out << "thresholds: " << list.size() << " categories from " << in.merged.rank_population.size()
          << " journals and book series -> " << args.out << '\n';
  return kOk;
}

struct ClassifyArgs {
  std::string scimago, sources, pubcounts, out, thresholds_out, exceptions_out, shares_out;
  double deduce_threshold = 0.20;
  double share_floor = 0.10;
  ParseFlags parse;
};

int run_classify(const ClassifyArgs& args, Context& ctx) {
  LoadedOptions loaded;
  configure(args.parse, loaded);
  const AsjcTable& names = loaded.table ? *loaded.table : AsjcTable::builtin();
  auto in = load_sources(args.scimago, args.sources, loaded.options, ctx);

  std::vector<PubCount> counts;
  if (!args.pubcounts.empty()) {
    auto list_options = loaded.options;
    list_options.delimiter = 0;
    auto parsed = ingest::parse_pubcounts(ingest::read_file(args.pubcounts), list_options);
    report_parse(parsed, args.pubcounts, ctx);
    counts = std::move(parsed.records);
  }

  auto set = classify::build_thresholds(in.merged.rank_population);
  auto conferences = in.merged.conferences;
  std::size_t deduced = 0;
  std::vector<report::ExceptionRow> exceptions;
  if (!counts.empty()) {
    for (auto& conf : conferences) {
      if (!conf.categories.empty()) continue;
      try {
        for (auto cat : classify::deduce_categories(conf.source_id, counts, args.deduce_threshold)) {
          cat.name = names.name_for(cat.code);
          conf.categories.insert(cat);
        }
        ++deduced;
      } catch (const Error& e) {
        if (e.code() != Errc::NoPublications) throw;
      }
    }
  }

  auto result = classify::classify_conferences(conferences, set.by_category);
  for (const auto& ex : result.exceptions) {
    exceptions.push_back({ex.source_id, std::string(errc_name(ex.reason)), ex.detail});
  }
  for (const auto& sk : result.skipped) {
    exceptions.push_back({sk.source_id, "SkippedCategory", std::to_string(sk.category.code)});
  }
  std::sort(exceptions.begin(), exceptions.end(), [](const auto& a, const auto& b) {
    return std::tie(a.source_id, a.reason, a.detail) < std::tie(b.source_id, b.reason, b.detail);
  });
  for (const auto& ex : exceptions) {
    if (ex.reason == "SkippedCategory") continue;
    ctx.err << "warning: " << ex.source_id << " not classified: " << ex.reason << " (" << ex.detail
            << ")\n";
  }

  auto rows = report::make_classified_rows(result.assignments, conferences);
  report::write_file(args.out, report::emit_classified_csv(rows));
  if (!args.thresholds_out.empty()) {
    std::vector<classify::CategoryThresholds> list;
    for (const auto& [code, t] : set.by_category) list.push_back(t);
    report::write_file(args.thresholds_out, report::emit_thresholds_csv(list, names));
  }
  if (!args.exceptions_out.empty()) {
    report::write_file(args.exceptions_out, report::emit_exceptions_csv(exceptions));
  }
  if (!args.shares_out.empty()) {
    auto shares = compare::proceedings_share(compare::tally_shares(in.source_list, counts),
                                             args.share_floor);
    report::write_file(args.shares_out, report::emit_shares_csv(shares, names));
  }

  std::set<std::string> classified_ids;
  for (const auto& a : result.assignments) classified_ids.insert(a.source_id);
  ctx.out << "classify: " << classified_ids.size() << " of " << conferences.size()
          << " conferences classified (" << result.assignments.size() << " assignments, "
          << deduced << " with deduced categories, " << result.skipped.size()
          << " skipped categories) -> " << args.out << '\n';
  return kOk;
}

struct CompareArgs {
  std::string classified, expert, overrides, out, mode = "category", category = "17", mapping;
  double jaccard = 0.6;
};

bool in_category_scope(int code, const std::string& scope) {
  auto s = std::to_string(code);
  return scope.size() == 4 ? s == scope : s.starts_with(scope);
}

int run_compare(const CompareArgs& args, Context& ctx) {
  auto rows = report::parse_classified_csv(ingest::read_file(args.classified));
  auto entries_parsed = ingest::parse_expert_csv(ingest::read_file(args.expert));
  report_parse(entries_parsed, args.expert, ctx);
  const auto& entries = entries_parsed.records;
  std::vector<compare::Override> overrides;
  if (!args.overrides.empty()) overrides = compare::parse_overrides(ingest::read_file(args.overrides));

  auto mapping = compare::RankMapping::core_default();
  if (!args.mapping.empty()) {
    auto parts = text::split(args.mapping, ',');
    if (parts.size() != 4) throw Error(Errc::InvalidArgument, "--mapping needs four labels");
    mapping = compare::RankMapping::from_labels({parts[0], parts[1], parts[2], parts[3]});
  }

  std::map<std::string, classify::Quartile> quartiles;
  std::map<std::string, std::string> titles;
  for (const auto& r : rows) {
    if (!in_category_scope(r.category.code, args.category)) continue;
    auto q = args.mode == "best" ? r.best_quartile : r.quartile;
    auto [it, inserted] = quartiles.emplace(r.source_id, q);
    if (!inserted && classify::better_than(q, it->second)) it->second = q;
    titles.emplace(r.source_id, r.title);
  }
  std::vector<SourceRecord> conferences;
  for (const auto& [id, title] : titles) {
    SourceRecord rec;
    rec.source_id = id;
    rec.title = title;
    rec.source_type = SourceType::ConferenceProceedings;
    conferences.push_back(std::move(rec));
  }

  auto outcome = compare::match_expert(conferences, entries, overrides, args.jaccard);
  auto stats = compare::compute_stats(quartiles, outcome, entries, mapping);
  report::write_file(args.out, report::emit_comparison_json(stats, outcome));

  ctx.out << "compare: " << outcome.matches.size() << " of " << quartiles.size()
          << " conferences matched";
  if (!quartiles.empty()) ctx.out << " (" << compare::format_percent(stats.overlap) << ")";
  ctx.out << ", " << outcome.aggregators.size() << " aggregators, " << outcome.excluded.size()
          << " excluded\n";
  if (stats.spearman_rho) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *stats.spearman_rho);
    ctx.out << "spearman rho: " << buf << " (n=" << stats.n_matched << ")\n";
  } else {
    ctx.out << "spearman rho: undefined (" << stats.rho_undefined_reason << ")\n";
  }
  return kOk;
}

struct ScoreArgs {
  std::string classified, scheme = "cmepp", track, out;
};

int run_score(const ScoreArgs& args, Context& ctx) {
  auto track = score::parse_track(args.track);
  if (!track) throw Error(Errc::UnknownTrack, "unknown track '" + args.track + "'");
  auto scheme = args.scheme == "cmepp"
                    ? score::cmepp_scheme()
                    : score::parse_scheme_csv(ingest::read_file(args.scheme), args.scheme);
  auto rows = report::parse_classified_csv(ingest::read_file(args.classified));

  std::map<std::string, report::ScoreRow> per_source;
  for (const auto& r : rows) {
    auto cls = score::to_score_class(r.best_quartile);
    per_source.emplace(r.source_id, report::ScoreRow{r.source_id, r.title, cls, *track, 0.0});
  }
  std::vector<report::ScoreRow> out_rows;
  double total = 0.0;
  for (auto& [id, row] : per_source) {
    row.points = score::score_source(row.score_class, row.track, scheme);
    total += row.points;
    out_rows.push_back(row);
  }
  report::write_file(args.out, report::emit_scores_csv(out_rows));
  ctx.out << "score: " << out_rows.size() << " sources, " << text::format_decimal(total)
          << " points under " << scheme.name << " (" << score::to_string(*track) << ") -> "
          << args.out << '\n';
  return kOk;
}

struct ReportArgs {
  std::string in_dir, out_dir, data_year = "unspecified";
  bool svg = false;
};

int run_report(const ReportArgs& args, Context& ctx) {
  if (!fs::is_directory(args.in_dir)) {
    throw Error(Errc::IoFailure, "'" + args.in_dir + "' is not a directory");
  }
  report::ReportInputs inputs;
  inputs.metadata.push_back({"Input directory", args.in_dir});
  inputs.metadata.push_back({"Data year", args.data_year});
  inputs.metadata.push_back({"SVG charts", args.svg ? "yes" : "no"});

  auto load = [&](const char* name) -> std::optional<std::string> {
    auto path = fs::path(args.in_dir) / name;
    if (!fs::exists(path)) return std::nullopt;
    auto bytes = ingest::read_file(path.string());
    inputs.metadata.push_back({std::string("sha256 ") + name, sha256_hex(bytes)});
    return bytes;
  };
  if (auto t = load("thresholds.csv")) inputs.thresholds = report::parse_thresholds_csv(*t);
  if (auto t = load("classified.csv")) inputs.classified = report::parse_classified_csv(*t);
  if (auto t = load("exceptions.csv")) inputs.exceptions = report::parse_exceptions_csv(*t);
  if (auto t = load("comparison.json")) inputs.comparison = report::parse_comparison_json(*t);
  if (auto t = load("scores.csv")) inputs.scores = report::parse_scores_csv(*t);
  if (auto t = load("shares.csv")) inputs.shares = report::parse_shares_csv(*t);

  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec) throw Error(Errc::IoFailure, "cannot create '" + args.out_dir + "': " + ec.message());

  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    auto path = (fs::path(args.out_dir) / name).string();
    report::write_file(path, content);
    written.push_back(path);
  };
  emit("report.md", report::emit_markdown_report(inputs));

  if (args.svg) {
    if (inputs.classified && !inputs.classified->empty()) {
      std::map<std::string, classify::Quartile> best;
      for (const auto& r : *inputs.classified) best.emplace(r.source_id, r.best_quartile);
      std::array<double, 4> counts{};
      for (const auto& [id, q] : best) counts[classify::ordinal(q) - 1] += 1.0;
      std::vector<report::Bar> bars;
      for (int i = 0; i < 4; ++i) {
        bars.push_back({std::string(classify::to_string(classify::quartile_from_ordinal(i + 1))),
                        counts[i]});
      }
      emit("quartiles.svg", report::emit_svg_bars(bars, "Conference proceedings by best quartile",
                                                  "Number of proceedings"));
    }
    if (inputs.shares && !inputs.shares->empty()) {
      std::vector<report::Bar> bars;
      for (const auto& s : *inputs.shares) {
        bars.push_back({s.category.name.value_or(std::to_string(s.category.code)), s.share});
      }
      emit("shares.svg", report::emit_svg_bars(bars, "Share of conference proceedings",
                                               "Share of publications"));
    }
  }
  ctx.out << "report: wrote";
  for (const auto& p : written) ctx.out << ' ' << p;
  ctx.out << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Quartile ranking of conference proceedings from SJR data", "confrank"};
  app.require_subcommand(1);

  ThresholdsArgs th;
  auto* cmd_th = app.add_subcommand("thresholds", "Per-category SJR quartile thresholds");
  cmd_th->add_option("--scimago", th.scimago, "SCImago export")->required();
  cmd_th->add_option("--sources", th.sources, "Canonical source list CSV")->required();
  cmd_th->add_option("--out", th.out, "Thresholds CSV to write")->required();
  add_parse_flags(cmd_th, th.parse);

  ClassifyArgs cl;
  auto* cmd_cl = app.add_subcommand("classify", "Assign conference proceedings to quartiles");
  cmd_cl->add_option("--scimago", cl.scimago, "SCImago export")->required();
  cmd_cl->add_option("--sources", cl.sources, "Canonical source list CSV")->required();
  cmd_cl->add_option("--pubcounts", cl.pubcounts, "Publication counts for category deduction");
  cmd_cl->add_option("--deduce-threshold", cl.deduce_threshold, "Minimum publication share")
      ->check(CLI::Range(0.0, 1.0));
  cmd_cl->add_option("--out", cl.out, "Classified CSV to write")->required();
  cmd_cl->add_option("--thresholds-out", cl.thresholds_out, "Also write the thresholds CSV");
  cmd_cl->add_option("--exceptions", cl.exceptions_out, "Write unclassified sources and skips");
  cmd_cl->add_option("--shares-out", cl.shares_out, "Write per-category proceedings shares");
  cmd_cl->add_option("--share-floor", cl.share_floor, "Shares at or below this are dropped")
      ->check(CLI::Range(0.0, 1.0));
  add_parse_flags(cmd_cl, cl.parse);

  CompareArgs cp;
  auto* cmd_cp = app.add_subcommand("compare", "Compare quartiles with an expert ranking");
  cmd_cp->add_option("--classified", cp.classified, "Classified CSV")->required();
  cmd_cp->add_option("--expert", cp.expert, "Expert ranking CSV")->required();
  cmd_cp->add_option("--overrides", cp.overrides, "Curated override CSV");
  cmd_cp->add_option("--jaccard", cp.jaccard, "Token-overlap acceptance threshold")
      ->check(CLI::Range(0.0, 1.0));
  cmd_cp->add_option("--quartile-mode", cp.mode, "category or best")
      ->check(CLI::IsMember({"category", "best"}));
  cmd_cp->add_option("--category", cp.category,
                     "Scope: a 4-digit ASJC code or a 2-digit subject area (default 17)");
  cmd_cp->add_option("--mapping", cp.mapping, "Four grades for Q1..Q4 (default A*,A,B,C)");
  cmd_cp->add_option("--out", cp.out, "Comparison JSON to write")->required();

  ScoreArgs sc;
  auto* cmd_sc = app.add_subcommand("score", "Apply a point scheme to classified sources");
  cmd_sc->add_option("--classified", sc.classified, "Classified CSV")->required();
  cmd_sc->add_option("--scheme", sc.scheme, "Scheme CSV or 'cmepp'");
  cmd_sc->add_option("--track", sc.track, "natural or ssh")->required();
  cmd_sc->add_option("--out", sc.out, "Scores CSV to write")->required();

  ReportArgs rp;
  auto* cmd_rp = app.add_subcommand("report", "Markdown report and charts for a run directory");
  cmd_rp->add_option("--in", rp.in_dir, "Run directory")->required();
  cmd_rp->add_option("--out", rp.out_dir, "Output directory")->required();
  cmd_rp->add_flag("--svg", rp.svg, "Also write SVG bar charts");
  cmd_rp->add_option("--data-year", rp.data_year, "Data year label shown in the report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kContractError;
  }

  try {
    if (cmd_th->parsed()) return run_thresholds(th, ctx);
    if (cmd_cl->parsed()) return run_classify(cl, ctx);
    if (cmd_cp->parsed()) return run_compare(cp, ctx);
    if (cmd_sc->parsed()) return run_score(sc, ctx);
    if (cmd_rp->parsed()) return run_report(rp, ctx);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_io() ? kIoError : kContractError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kContractError;
  }
  return kContractError;
}

}  // namespace confrank::cli

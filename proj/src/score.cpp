#include "confrank/score.hpp"

#include <cmath>

#include "confrank/csv.hpp"
#include "confrank/error.hpp"
#include "confrank/text.hpp"

namespace confrank::score {

namespace {

constexpr Track kTracks[] = {Track::NaturalEngineeringLife, Track::SocialHumanities};
constexpr ScoreClass kClasses[] = {ScoreClass::Q1, ScoreClass::Q2, ScoreClass::Q3, ScoreClass::Q4,
                                   ScoreClass::OtherIndexed};

}  // namespace

std::string_view to_string(Track track) {
  return track == Track::NaturalEngineeringLife ? "natural_engineering_life" : "social_humanities";
}

std::string_view to_string(ScoreClass cls) {
  switch (cls) {
    case ScoreClass::Q1: return "Q1";
    case ScoreClass::Q2: return "Q2";
    case ScoreClass::Q3: return "Q3";
    case ScoreClass::Q4: return "Q4";
    case ScoreClass::OtherIndexed: return "other_indexed";
  }
  return "other_indexed";
}

std::optional<Track> parse_track(std::string_view s) {
  auto key = text::to_lower(text::trim(s));
  if (key == "natural_engineering_life" || key == "natural") return Track::NaturalEngineeringLife;
  if (key == "social_humanities" || key == "ssh") return Track::SocialHumanities;
  return std::nullopt;
}

std::optional<ScoreClass> parse_score_class(std::string_view s) {
  auto key = text::trim(s);
  for (auto cls : kClasses) {
    if (text::to_lower(key) == text::to_lower(to_string(cls))) return cls;
  }
  return std::nullopt;
}

ScoreClass to_score_class(classify::Quartile q) {
  return static_cast<ScoreClass>(classify::ordinal(q) - 1);
}

void validate(const ScoreScheme& scheme) {
  for (auto track : kTracks) {
    for (auto cls : kClasses) {
      auto it = scheme.track_rules.find({track, cls});
      if (it == scheme.track_rules.end()) {
        throw Error(Errc::InvalidArgument, "scheme '" + scheme.name + "' lacks " +
                                               std::string(to_string(track)) + "/" +
                                               std::string(to_string(cls)));
      }
      if (!(it->second >= 0.0) || !std::isfinite(it->second)) {
        throw Error(Errc::InvalidArgument, "scheme '" + scheme.name + "' has negative points");
      }
    }
  }
}

ScoreScheme cmepp_scheme() {
  ScoreScheme scheme;
  scheme.name = "cmepp";
  const double natural[] = {20.0, 10.0, 5.0, 2.5, 1.0};
  for (std::size_t i = 0; i < 5; ++i) {
    scheme.track_rules[{Track::NaturalEngineeringLife, kClasses[i]}] = natural[i];
    scheme.track_rules[{Track::SocialHumanities, kClasses[i]}] = 3.0;
  }
  return scheme;
}

ScoreScheme parse_scheme_csv(std::string_view text, std::string name) {
  auto table = csv::read_table(text, ',');
  auto need = [&](std::string_view col) {
    auto c = csv::find_column(table.header, col);
    if (!c) throw Error(Errc::MissingColumn, "scheme: column '" + std::string(col) + "' not found");
    return *c;
  };
  auto c_track = need("track");
  auto c_class = need("class");
  auto c_points = need("points");

  ScoreScheme scheme;
  scheme.name = std::move(name);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    auto where = "scheme line " + std::to_string(table.line_numbers[i]) + ": ";
    if (row.size() <= std::max({c_track, c_class, c_points})) {
      throw Error(Errc::RowParseError, where + "too few fields");
    }
    auto track = parse_track(row[c_track]);
    if (!track) throw Error(Errc::UnknownTrack, where + "unknown track '" + row[c_track] + "'");
    auto cls = parse_score_class(row[c_class]);
    if (!cls) throw Error(Errc::UnknownEnumValue, where + "unknown class '" + row[c_class] + "'");
    auto points = text::parse_decimal(row[c_points], text::DecimalMark::Point);
    if (!points) throw Error(Errc::RowParseError, where + "bad points '" + row[c_points] + "'");
    if (!scheme.track_rules.emplace(std::pair{*track, *cls}, *points).second) {
      throw Error(Errc::RowParseError, where + "duplicate rule");
    }
  }
  validate(scheme);
  return scheme;
}

double score_source(ScoreClass cls, Track track, const ScoreScheme& scheme) {
  auto it = scheme.track_rules.find({track, cls});
  if (it == scheme.track_rules.end()) {
    throw Error(Errc::UnknownTrack, "scheme '" + scheme.name + "' has no rule for " +
                                        std::string(to_string(track)) + "/" +
                                        std::string(to_string(cls)));
  }
  return it->second;
}

}  // namespace confrank::score

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "confrank/classify.hpp"

namespace confrank::score {

enum class Track { NaturalEngineeringLife, SocialHumanities };

// Q1..Q4 or "indexed but unranked".
enum class ScoreClass { Q1, Q2, Q3, Q4, OtherIndexed };

std::string_view to_string(Track track);
std::string_view to_string(ScoreClass cls);
// Accepts "natural_engineering_life"/"natural" and "social_humanities"/"ssh".
std::optional<Track> parse_track(std::string_view s);
// "Q1".."Q4" or "other_indexed".
std::optional<ScoreClass> parse_score_class(std::string_view s);
ScoreClass to_score_class(classify::Quartile q);

struct ScoreScheme {
  std::string name;
  std::map<std::pair<Track, ScoreClass>, double> track_rules;
};

// InvalidArgument unless every (track, class) pair is present with points >= 0.
void validate(const ScoreScheme& scheme);

// Natural/engineering/life: 20, 10, 5, 2.5, other indexed 1.
// Social sciences and humanities: flat 3.
ScoreScheme cmepp_scheme();

// Header `track,class,points`; duplicates and gaps are rejected.
ScoreScheme parse_scheme_csv(std::string_view text, std::string name);

// UnknownTrack when the scheme has no rule for this track and class.
double score_source(ScoreClass cls, Track track, const ScoreScheme& scheme);

}  // namespace confrank::score

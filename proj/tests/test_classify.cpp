#include <doctest.h>

#include <algorithm>
#include <random>

#include "confrank/classify.hpp"
#include "confrank/error.hpp"
#include "oracles.hpp"

using namespace confrank;
using namespace confrank::classify;

namespace {

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidArgument;
}

std::vector<ScoredSource> population(const std::vector<double>& sjr) {
  std::vector<ScoredSource> out;
  for (std::size_t i = 0; i < sjr.size(); ++i) out.push_back({"s" + std::to_string(i), sjr[i]});
  return out;
}

CategoryThresholds thresholds_of(const std::vector<double>& sjr) {
  auto pop = population(sjr);
  return compute_thresholds(make_asjc(1702), pop);
}

CategoryThresholds worked_example() {
  CategoryThresholds t;
  t.category = make_asjc(2501);
  t.population_size = 100;
  t.q1_min = 0.261;
  t.q2_min = 0.139;
  t.q3_min = 0.104;
  t.q4_min = 0.1;
  return t;
}

SourceRecord source(std::string id, SourceType type, std::optional<double> sjr,
                    std::initializer_list<int> codes) {
  SourceRecord r;
  r.source_id = std::move(id);
  r.source_type = type;
  r.status = SourceStatus::Ongoing;
  r.sjr = sjr;
  for (int c : codes) r.categories.insert(make_asjc(c));
  return r;
}

}  // namespace

TEST_CASE("thresholds with one and two sources per block") {
  auto t = thresholds_of({4, 3, 2, 1});
  CHECK(t.q1_min == 4);
  CHECK(t.q2_min == 3);
  CHECK(t.q3_min == 2);
  CHECK(t.q4_min == 1);
  CHECK(t.population_size == 4);

  t = thresholds_of({1, 8, 3, 6, 5, 4, 7, 2});
  CHECK(t.q1_min == 7);
  CHECK(t.q2_min == 5);
  CHECK(t.q3_min == 3);
  CHECK(t.q4_min == 1);
}

TEST_CASE("thresholds for N = 10 match the block-partition oracle") {
  std::vector<double> sjr{5.2, 0.3, 1.7, 2.2, 0.9, 3.1, 0.05, 4.4, 1.1, 2.9};
  auto t = thresholds_of(sjr);
  auto mins = oracle::block_minima(sjr);
  CHECK(t.q1_min == mins[0]);
  CHECK(t.q2_min == mins[1]);
  CHECK(t.q3_min == mins[2]);
  CHECK(t.q4_min == mins[3]);
  // Frozen from the oracle: blocks {5.2,4.4,3.1} {2.9,2.2} {1.7,1.1,0.9} {0.3,0.05}.
  CHECK(t.q1_min == 3.1);
  CHECK(t.q2_min == 2.2);
  CHECK(t.q3_min == 0.9);
  CHECK(t.q4_min == 0.05);
}

TEST_CASE("threshold errors") {
  CHECK(error_of([] { thresholds_of({}); }) == Errc::EmptyPopulation);
  CHECK(error_of([] { thresholds_of({3, 2, 1}); }) == Errc::PopulationTooSmall);
}

TEST_CASE("worked example assignment") {
  auto t = worked_example();
  auto r = assign_quartile(0.195, t);
  CHECK(r.quartile == Quartile::Q2);
  CHECK_FALSE(r.clamped);

  r = assign_quartile(0.261, t);
  CHECK(r.quartile == Quartile::Q1);
  CHECK_FALSE(r.clamped);

  r = assign_quartile(0.05, t);
  CHECK(r.quartile == Quartile::Q4);
  CHECK(r.clamped);

  r = assign_quartile(0.1, t);
  CHECK(r.quartile == Quartile::Q4);
  CHECK_FALSE(r.clamped);
}

TEST_CASE("quartile codes") {
  CHECK(ordinal(Quartile::Q1) == 1);
  CHECK(better_than(Quartile::Q1, Quartile::Q2));
  CHECK(quartile_from_ordinal(3) == Quartile::Q3);
  CHECK(error_of([] { quartile_from_ordinal(5); }) == Errc::InvalidArgument);
  CHECK(to_string(Quartile::Q4) == "Q4");
  CHECK(parse_quartile("q2") == Quartile::Q2);
  CHECK_FALSE(parse_quartile("Q5").has_value());
}

TEST_CASE("property: assignment is monotone in SJR") {
  auto t = worked_example();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.0, 0.4);
  for (int i = 0; i < 2000; ++i) {
    double a = d(rng), b = d(rng);
    if (a > b) std::swap(a, b);
    CHECK(ordinal(assign_quartile(b, t).quartile) <= ordinal(assign_quartile(a, t).quartile));
  }
}

TEST_CASE("property: population members agree with the oracle partition") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(4, 40)(rng);
    std::uniform_int_distribution<int> grid(0, 12);
    std::vector<double> sjr;
    for (std::size_t i = 0; i < n; ++i) sjr.push_back(grid(rng) * 0.125);
    auto t = thresholds_of(sjr);
    CHECK(t.q1_min >= t.q2_min);
    CHECK(t.q2_min >= t.q3_min);
    CHECK(t.q3_min >= t.q4_min);
    auto expected = oracle::quartile_blocks(sjr);
    for (std::size_t i = 0; i < n; ++i) {
      auto r = assign_quartile(sjr[i], t);
      CHECK(ordinal(r.quartile) == expected[i]);
      CHECK_FALSE(r.clamped);
    }
  }
}

TEST_CASE("property: distinct values with 4 | N split evenly") {
  std::mt19937_64 rng(5);
  for (std::size_t n = 4; n <= 40; n += 4) {
    std::vector<double> sjr;
    for (std::size_t i = 0; i < n; ++i) sjr.push_back(static_cast<double>(i) + 0.5);
    std::shuffle(sjr.begin(), sjr.end(), rng);
    auto t = thresholds_of(sjr);
    std::array<std::size_t, 4> counts{};
    for (double v : sjr) ++counts[ordinal(assign_quartile(v, t).quartile) - 1];
    for (auto c : counts) CHECK(c == n / 4);
  }
}

TEST_CASE("property: thresholds scale with the population") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(0.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> sjr(12);
    for (auto& v : sjr) v = d(rng);
    auto scaled = sjr;
    for (auto& v : scaled) v *= 4.0;
    auto a = thresholds_of(sjr), b = thresholds_of(scaled);
    CHECK(b.q1_min == a.q1_min * 4.0);
    CHECK(b.q2_min == a.q2_min * 4.0);
    CHECK(b.q3_min == a.q3_min * 4.0);
    CHECK(b.q4_min == a.q4_min * 4.0);
  }
}

TEST_CASE("property: thresholds ignore input order") {
  std::mt19937_64 rng(31);
  std::vector<double> sjr{0.4, 0.4, 1.0, 0.2, 0.9, 0.9, 0.1, 2.5, 0.3};
  auto base = thresholds_of(sjr);
  for (int i = 0; i < 50; ++i) {
    std::shuffle(sjr.begin(), sjr.end(), rng);
    auto t = thresholds_of(sjr);
    CHECK(t.q1_min == base.q1_min);
    CHECK(t.q4_min == base.q4_min);
  }
}

TEST_CASE("build_thresholds groups by category and flags small ones") {
  std::vector<SourceRecord> pop;
  for (int i = 0; i < 4; ++i) pop.push_back(source("j" + std::to_string(i), SourceType::Journal, 1.0 + i, {1702}));
  pop.push_back(source("x", SourceType::Journal, 0.5, {2604}));
  pop.push_back(source("nosjr", SourceType::Journal, std::nullopt, {1702}));
  auto set = build_thresholds(pop);
  REQUIRE(set.by_category.count(1702) == 1);
  CHECK(set.by_category.at(1702).population_size == 4);
  REQUIRE(set.unrankable.size() == 1);
  CHECK(set.unrankable[0].category.code == 2604);
}

TEST_CASE("classify conferences") {
  std::map<int, CategoryThresholds> th;
  auto t = worked_example();
  th[2501] = t;
  t.category = make_asjc(2201);
  t.q1_min = 0.5;
  th[2201] = t;

  std::vector<SourceRecord> confs{
      source("iop", SourceType::ConferenceProceedings, 0.195, {2201, 2501}),
      source("lonely", SourceType::ConferenceProceedings, 0.3, {2604}),
      source("bare", SourceType::ConferenceProceedings, 0.3, {}),
  };
  auto result = classify_conferences(confs, th);
  REQUIRE(result.assignments.size() == 2);
  CHECK(result.assignments[0].category.code == 2201);
  CHECK(result.assignments[0].quartile == Quartile::Q2);
  CHECK(result.assignments[1].category.code == 2501);
  CHECK(result.assignments[1].quartile == Quartile::Q2);
  REQUIRE(result.skipped.size() == 1);
  CHECK(result.skipped[0].source_id == "lonely");
  REQUIRE(result.exceptions.size() == 1);
  CHECK(result.exceptions[0].source_id == "bare");
  CHECK(result.exceptions[0].reason == Errc::NoCategories);
}

TEST_CASE("clamped flag invariant holds in classification") {
  std::map<int, CategoryThresholds> th{{2501, worked_example()}};
  std::vector<SourceRecord> confs{source("low", SourceType::ConferenceProceedings, 0.01, {2501})};
  auto result = classify_conferences(confs, th);
  REQUIRE(result.assignments.size() == 1);
  CHECK(result.assignments[0].clamped_below_q4);
  CHECK(result.assignments[0].quartile == Quartile::Q4);
}

TEST_CASE("deduce categories from publication counts") {
  auto pc = [](std::string id, int code, long long n) { return PubCount{std::move(id), make_asjc(code), n}; };
  std::vector<PubCount> counts{pc("s", 1702, 80), pc("s", 2604, 15), pc("s", 1100, 5), pc("other", 2604, 900)};
  auto cats = deduce_categories("s", counts);
  CHECK(cats == std::set<AsjcCode>{make_asjc(1702)});

  std::vector<PubCount> even{pc("s", 2604, 50), pc("s", 1702, 50)};
  CHECK(deduce_categories("s", even) == std::set<AsjcCode>{make_asjc(1702), make_asjc(2604)});
  CHECK(deduce_categories("s", even, 0.6) == std::set<AsjcCode>{make_asjc(1702)});

  std::vector<PubCount> spread{pc("s", 2604, 10), pc("s", 1702, 10), pc("s", 1100, 10),
                               pc("s", 1200, 10), pc("s", 1300, 10), pc("s", 1400, 10)};
  CHECK(deduce_categories("s", spread) == std::set<AsjcCode>{make_asjc(1100)});

  CHECK(error_of([] { deduce_categories("s", std::vector<PubCount>{}); }) == Errc::NoPublications);
  std::vector<PubCount> zeros{pc("s", 1702, 0)};
  CHECK(error_of([&] { deduce_categories("s", zeros); }) == Errc::NoPublications);
}

TEST_CASE("best quartile across categories") {
  auto qa = [](Quartile q) {
    QuartileAssignment a;
    a.source_id = "s";
    a.quartile = q;
    return a;
  };
  std::vector<QuartileAssignment> three{qa(Quartile::Q2), qa(Quartile::Q1), qa(Quartile::Q3)};
  CHECK(best_quartile(three) == Quartile::Q1);
  std::vector<QuartileAssignment> one{qa(Quartile::Q3)};
  CHECK(best_quartile(one) == Quartile::Q3);
  CHECK(error_of([] { best_quartile(std::vector<QuartileAssignment>{}); }) == Errc::EmptyAssignments);

  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    std::shuffle(three.begin(), three.end(), rng);
    CHECK(best_quartile(three) == Quartile::Q1);
  }
}

TEST_CASE("category multiplicity histogram") {
  std::vector<SourceRecord> confs{
      source("a", SourceType::ConferenceProceedings, 1, {1702}),
      source("b", SourceType::ConferenceProceedings, 1, {1702}),
      source("c", SourceType::ConferenceProceedings, 1, {1702, 2604}),
  };
  auto h = category_multiplicity(confs);
  CHECK(h == std::map<std::size_t, std::size_t>{{1, 2}, {2, 1}});
  CHECK(category_multiplicity(std::vector<SourceRecord>{}).empty());
}

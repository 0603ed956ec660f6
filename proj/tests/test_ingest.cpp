#include <doctest.h>

#include <sstream>

#include "confrank/error.hpp"
#include "confrank/ingest.hpp"

using namespace confrank;
using namespace confrank::ingest;

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

const char* kScimago =
    "Rank;Sourceid;Title;Type;Issn;SJR;SJR Best Quartile;Categories\n"
    "1;21100;IOP Conference Series: Materials Science and Engineering;conference and proceedings;"
    "\"17578981, 1757899X\";0,195;-;\"Engineering (miscellaneous) (Q3); Materials Science (miscellaneous) (Q4)\"\n"
    "2;12345;Journal of Things;journal;03785955;1,5;Q1;Software (Q1)\n"
    "3;999;No Rank Yet;journal;;;-;Software (Q4)\n";

const char* kSourceList =
    "source_id,title,issn,e_issn,type,status,asjc_codes\n"
    "21100,IOP Conference Series: Materials Science and Engineering,1757-8981,1757-899X,"
    "conference proceedings,ongoing,2201;2501\n"
    "12345,Journal of Things,0378-5955,,journal,ongoing,1712\n"
    "777,\"Proceedings, Old\",,,conference proceedings,discontinued,1702;2604\n";

}  // namespace

TEST_CASE("SCImago export with decimal commas and semicolons") {
  auto parsed = parse_scimago_csv(kScimago);
  REQUIRE(parsed.records.size() == 3);
  CHECK(parsed.issues.empty());
  CHECK(parsed.warnings.empty());

  const auto& iop = parsed.records[0];
  CHECK(iop.source_id == "21100");
  CHECK(iop.source_type == SourceType::ConferenceProceedings);
  CHECK(iop.sjr.value() == 0.195);
  CHECK(iop.issns.size() == 2);
  CHECK(iop.issns.begin()->str() == "1757-8981");
  std::set<int> codes;
  for (const auto& c : iop.categories) codes.insert(c.code);
  CHECK(codes == std::set<int>{2201, 2501});
  CHECK_FALSE(iop.status.has_value());

  CHECK(parsed.records[1].sjr.value() == 1.5);
  CHECK_FALSE(parsed.records[2].sjr.has_value());
}

TEST_CASE("SCImago export via stream and decimal-point values agree") {
  std::string comma = "Sourceid;Title;Type;Issn;SJR;Categories\n1;T;journal;;0,261;Software (Q1)\n";
  std::string point = "Sourceid,Title,Type,Issn,SJR,Categories\n1,T,journal,,0.261,Software (Q1)\n";
  std::istringstream in(comma);
  CHECK(parse_scimago_csv(in).records == parse_scimago_csv(point).records);
}

TEST_CASE("SCImago export errors") {
  CHECK(error_of([] { parse_scimago_csv("Sourceid;Type;Issn;SJR;Categories\n1;journal;;1;\n"); }) ==
        Errc::MissingColumn);

  std::string bad = "Sourceid;Title;Type;Issn;SJR;Categories\n1;A;journal;;x;\n2;B;journal;;1;\n";
  CHECK(error_of([&] { parse_scimago_csv(bad); }) == Errc::RowParseError);

  ParseOptions lenient;
  lenient.mode = ParseMode::Lenient;
  auto parsed = parse_scimago_csv(bad, lenient);
  CHECK(parsed.records.size() == 1);
  REQUIRE(parsed.issues.size() == 1);
  CHECK(parsed.issues[0].line == 2);

  ParseOptions capped = lenient;
  capped.max_row_errors = 0;
  CHECK(error_of([&] { parse_scimago_csv(bad, capped); }) == Errc::RowParseError);

  std::string bad_issn = "Sourceid;Title;Type;Issn;SJR;Categories\n1;A;journal;03785954;1;\n";
  CHECK(error_of([&] { parse_scimago_csv(bad_issn); }) == Errc::ChecksumMismatch);
}

TEST_CASE("unknown SCImago category names are reported, not fatal") {
  auto parsed = parse_scimago_csv(
      "Sourceid;Title;Type;Issn;SJR;Categories\n1;A;journal;;1;Underwater Basket Weaving (Q1)\n");
  CHECK(parsed.records.size() == 1);
  CHECK(parsed.records[0].categories.empty());
  CHECK(parsed.warnings.size() == 1);
}

TEST_CASE("source list decoding") {
  auto parsed = parse_source_list(kSourceList);
  REQUIRE(parsed.records.size() == 3);
  CHECK(parsed.records[0].source_type == SourceType::ConferenceProceedings);
  CHECK(parsed.records[0].status == SourceStatus::Ongoing);
  const auto& old = parsed.records[2];
  CHECK(old.title == "Proceedings, Old");
  std::set<int> codes;
  for (const auto& c : old.categories) codes.insert(c.code);
  CHECK(codes == std::set<int>{1702, 2604});
  CHECK(old.categories.begin()->name.value() == "Artificial Intelligence");

  CHECK(error_of([] {
          parse_source_list("source_id,title,issn,e_issn,type,status,asjc_codes\n1,T,,,journal,paused,\n");
        }) == Errc::UnknownEnumValue);
  CHECK(error_of([] { parse_source_list("source_id,title,issn,type,status,asjc_codes\n"); }) ==
        Errc::MissingColumn);
}

TEST_CASE("source list round-trips byte for byte") {
  auto first = parse_source_list(kSourceList).records;
  auto emitted = emit_source_list(first);
  auto second = parse_source_list(emitted).records;
  CHECK(second == first);
  CHECK(emit_source_list(second) == emitted);
}

TEST_CASE("expert ranking with and without header") {
  auto with_header = parse_expert_csv(
      "entry_id,title,acronym,rank\n"
      "1,International Conference on Foo Systems,ICFS,A\n"
      "2,Bar Workshop,,Australasian B\n");
  REQUIRE(with_header.records.size() == 2);
  CHECK(with_header.records[0].rank_label == "A");
  CHECK(with_header.records[0].acronym.value() == "ICFS");
  CHECK(with_header.records[1].rank_label == "Australasian B");
  CHECK_FALSE(with_header.records[1].acronym.has_value());

  auto headerless = parse_expert_csv("7,Foo Systems,FS,A*\n8,Baz,BZ,C\n");
  REQUIRE(headerless.records.size() == 2);
  CHECK(headerless.records[0].entry_id == "7");
  CHECK(headerless.records[0].rank_label == "A*");

  auto no_id = parse_expert_csv("title,acronym,rank\nFoo,F,B\n");
  CHECK(no_id.records[0].entry_id == "1");

  CHECK(error_of([] { parse_expert_csv(""); }) == Errc::EmptyFile);
  CHECK(error_of([] { parse_expert_csv("entry_id,title,rank\n1,a,A\n"); }) == Errc::MissingColumn);
  CHECK(error_of([] { parse_expert_csv("1,a,b,A\n1,c,d,B\n"); }) == Errc::RowParseError);
}

TEST_CASE("publication counts") {
  auto parsed = parse_pubcounts("source_id,asjc_code,publication_count\nS,1702,80\nS,2604,15\n");
  REQUIRE(parsed.records.size() == 2);
  CHECK(parsed.records[1].count == 15);
  CHECK(error_of([] { parse_pubcounts("source_id,asjc_code,publication_count\nS,1702,-1\n"); }) ==
        Errc::RowParseError);
}

TEST_CASE("merge routes sources and applies the selection filters") {
  auto sci = parse_scimago_csv(kScimago).records;
  // A discontinued proceedings with SJR and an ongoing one without SJR.
  SourceRecord discontinued;
  discontinued.source_id = "777";
  discontinued.source_type = SourceType::ConferenceProceedings;
  discontinued.sjr = 0.4;
  sci.push_back(discontinued);
  auto list = parse_source_list(kSourceList).records;

  auto merged = merge_sources(sci, list);
  REQUIRE(merged.conferences.size() == 1);
  const auto& iop = merged.conferences[0];
  CHECK(iop.source_id == "21100");
  CHECK(iop.sjr.value() == 0.195);
  CHECK(iop.status == SourceStatus::Ongoing);
  REQUIRE(merged.rank_population.size() == 1);
  CHECK(merged.rank_population[0].source_id == "12345");
  CHECK(merged.scimago_only == 1);  // "999" has no source-list row and no SJR

  for (const auto& c : merged.conferences)
    for (const auto& j : merged.rank_population) CHECK(c.source_id != j.source_id);
}

TEST_CASE("merge joins by ISSN when ids differ and reports duplicate claims") {
  SourceRecord sci;
  sci.source_id = "sci-1";
  sci.source_type = SourceType::Journal;
  sci.sjr = 0.5;
  sci.issns.insert(normalize_issn("0378-5955"));

  auto list = parse_source_list(
                  "source_id,title,issn,e_issn,type,status,asjc_codes\n"
                  "L1,Journal,0378-5955,,journal,ongoing,1712\n")
                  .records;
  auto merged = merge_sources(std::vector{sci}, list);
  REQUIRE(merged.rank_population.size() == 1);
  CHECK(merged.rank_population[0].source_id == "L1");
  CHECK(merged.rank_population[0].categories.size() == 1);

  auto dup = parse_source_list(
                 "source_id,title,issn,e_issn,type,status,asjc_codes\n"
                 "L1,Journal,0378-5955,,journal,ongoing,1712\n"
                 "L2,Other,0378-5955,,journal,ongoing,1712\n")
                 .records;
  CHECK(error_of([&] { merge_sources(std::vector{sci}, dup); }) == Errc::DuplicateJoinKey);
  auto lenient = merge_sources(std::vector{sci}, dup, ParseMode::Lenient);
  CHECK(lenient.issues.size() == 1);
  CHECK(lenient.rank_population.at(0).source_id == "L1");
}

TEST_CASE("parsing is deterministic") {
  CHECK(parse_scimago_csv(kScimago).records == parse_scimago_csv(kScimago).records);
}

TEST_CASE("read_file surfaces I/O failures") {
  CHECK(error_of([] { read_file("/nonexistent/dir/file.csv"); }) == Errc::IoFailure);
}

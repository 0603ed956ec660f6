#include <doctest.h>

#include <random>

#include "confrank/error.hpp"
#include "confrank/issn.hpp"
#include "oracles.hpp"

using namespace confrank;

namespace {

Errc error_of(const std::string& raw) {
  try {
    normalize_issn(raw);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error for " << raw);
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("normalize_issn worked examples") {
  // Oracle: 0*8 + 3*7 + 7*6 + 8*5 + 5*4 + 9*3 + 5*2 = 160, 160 mod 11 = 6, check 11 - 6 = 5.
  CHECK(oracle::issn("0378-5955") == oracle::IssnVerdict::Valid);
  CHECK(normalize_issn("0378-5955").str() == "0378-5955");
  CHECK(normalize_issn("0378 5955").str() == "0378-5955");
  CHECK(normalize_issn("03785955").str() == "0378-5955");
  CHECK(error_of("0378-5954") == Errc::ChecksumMismatch);
}

TEST_CASE("check character edge cases") {
  // Remainder 1 yields 'X', remainder 0 yields '0'.
  CHECK(issn_check_char("2434561") == 'X');
  CHECK(normalize_issn("2434-561x").str() == "2434-561X");
  CHECK(issn_check_char("0000000") == '0');
  CHECK(error_of("1234-56") == Errc::MalformedIssn);
  CHECK(error_of("12a4-5678") == Errc::MalformedIssn);
  CHECK(error_of("1234-567Y") == Errc::MalformedIssn);
}

TEST_CASE("normalization is idempotent and every wrong check character is rejected") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> digit(0, 9);
  for (int trial = 0; trial < 500; ++trial) {
    std::string seven;
    for (int i = 0; i < 7; ++i) seven.push_back(static_cast<char>('0' + digit(rng)));
    auto issn = normalize_issn(seven + issn_check_char(seven));
    CHECK(normalize_issn(issn.str()).str() == issn.str());
    for (char c : std::string("0123456789X")) {
      if (c == issn.str().back()) continue;
      CHECK(error_of(seven + c) == Errc::ChecksumMismatch);
    }
  }
}

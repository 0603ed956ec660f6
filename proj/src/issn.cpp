#include "confrank/issn.hpp"

#include "confrank/error.hpp"

namespace confrank {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

char issn_check_char(std::string_view first_seven) {
  if (first_seven.size() != 7) {
    throw Error(Errc::MalformedIssn, "expected 7 digits, got '" + std::string(first_seven) + "'");
  }
  int sum = 0;
  for (std::size_t i = 0; i < 7; ++i) {
    if (!is_digit(first_seven[i])) {
      throw Error(Errc::MalformedIssn, "non-digit in '" + std::string(first_seven) + "'");
    }
    sum += (first_seven[i] - '0') * static_cast<int>(8 - i);
  }
  int remainder = sum % 11;
  if (remainder == 0) return '0';
  if (remainder == 1) return 'X';
  return static_cast<char>('0' + (11 - remainder));
}

Issn normalize_issn(std::string_view raw) {
  std::string compact;
  compact.reserve(8);
  for (char c : raw) {
    if (c == '-' || c == ' ' || c == '\t') continue;
    compact.push_back(c == 'x' ? 'X' : c);
  }
  if (compact.size() != 8) {
    throw Error(Errc::MalformedIssn, "'" + std::string(raw) + "' does not have 8 characters");
  }
  for (std::size_t i = 0; i < 7; ++i) {
    if (!is_digit(compact[i])) {
      throw Error(Errc::MalformedIssn, "'" + std::string(raw) + "' contains a non-digit");
    }
  }
  char last = compact[7];
  if (!is_digit(last) && last != 'X') {
    throw Error(Errc::MalformedIssn, "'" + std::string(raw) + "' has an invalid check character");
  }
  char expected = issn_check_char(std::string_view(compact).substr(0, 7));
  if (last != expected) {
    throw Error(Errc::ChecksumMismatch, "'" + std::string(raw) + "' expects check character '" +
                                            std::string(1, expected) + "'");
  }
  return Issn(compact.substr(0, 4) + "-" + compact.substr(4));
}

}  // namespace confrank

#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace confrank {

// International Standard Serial Number in canonical "NNNN-NNNC" form.
// Instances can only be obtained through normalize_issn, so every value
// carries a valid mod-11 check character.
class Issn {
 public:
  const std::string& str() const noexcept { return value_; }
  // The eight significant characters without the hyphen.
  std::string compact() const { return value_.substr(0, 4) + value_.substr(5, 4); }

  friend auto operator<=>(const Issn&, const Issn&) = default;

 private:
  explicit Issn(std::string canonical) : value_(std::move(canonical)) {}
  friend Issn normalize_issn(std::string_view raw);

  std::string value_;
};

// Check character for seven leading digits: weights 8..2, remainder 0 -> '0',
// remainder 1 -> 'X', otherwise 11 - remainder. Throws MalformedIssn unless
// the input is exactly seven ASCII digits.
char issn_check_char(std::string_view first_seven);

// Strips hyphens and whitespace, uppercases 'x' and validates. Throws
// MalformedIssn for bad length or characters and ChecksumMismatch when only
// the check character is wrong.
Issn normalize_issn(std::string_view raw);

}  // namespace confrank

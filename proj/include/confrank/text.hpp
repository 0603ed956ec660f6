#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace confrank::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);

// Splits on a single character; empty pieces are kept.
std::vector<std::string> split(std::string_view s, char sep);

enum class DecimalMark { Auto, Point, Comma };

// Parses a non-thousands-grouped decimal. With DecimalMark::Auto both '.' and
// ',' are accepted as the decimal separator (at most one of them).
std::optional<double> parse_decimal(std::string_view s, DecimalMark mark = DecimalMark::Auto);

std::optional<long long> parse_integer(std::string_view s);

// Shortest representation that round-trips through parse_decimal; always uses
// '.' and never an exponent for values in the usual SJR range.
std::string format_decimal(double value);

}  // namespace confrank::text

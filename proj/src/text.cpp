#include "confrank/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

namespace confrank::text {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_decimal(std::string_view s, DecimalMark mark) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  std::string buf(s);
  auto points = std::count(buf.begin(), buf.end(), '.');
  auto commas = std::count(buf.begin(), buf.end(), ',');
  switch (mark) {
    case DecimalMark::Point:
      if (commas != 0) return std::nullopt;
      break;
    case DecimalMark::Comma:
      if (points != 0) return std::nullopt;
      break;
    case DecimalMark::Auto:
      if (points + commas > 1) return std::nullopt;
      break;
  }
  std::replace(buf.begin(), buf.end(), ',', '.');
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::fixed);
  if (ec != std::errc{} || ptr != buf.data() + buf.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<long long> parse_integer(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string format_decimal(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

}  // namespace confrank::text

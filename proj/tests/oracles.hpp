#pragma once

// Independent reference computations used only by tests. None of these call
// into the library's implementation of the quantity they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace oracle {

enum class IssnVerdict { Valid, Malformed, ChecksumMismatch };

// Whole-number form of the mod-11 rule: with the check character valued
// 0..10 ('X' = 10), the weighted sum over all eight positions with weights
// 8..1 is divisible by 11.
inline IssnVerdict issn(const std::string& raw) {
  std::string s;
  for (char c : raw) {
    if (c == '-' || c == ' ' || c == '\t') continue;
    s.push_back(c == 'x' ? 'X' : c);
  }
  if (s.size() != 8) return IssnVerdict::Malformed;
  int sum = 0;
  for (int i = 0; i < 8; ++i) {
    int v;
    if (s[i] >= '0' && s[i] <= '9') {
      v = s[i] - '0';
    } else if (i == 7 && s[i] == 'X') {
      v = 10;
    } else {
      return IssnVerdict::Malformed;
    }
    sum += v * (8 - i);
  }
  return sum % 11 == 0 ? IssnVerdict::Valid : IssnVerdict::ChecksumMismatch;
}

// Quartile (1..4) of every population member by explicit block partition:
// sort descending, block = floor(4 (r - 1) / N), and a member takes the block
// of the first (best-ranked) occurrence of its value.
inline std::vector<int> quartile_blocks(const std::vector<double>& sjr) {
  const std::size_t n = sjr.size();
  std::vector<double> sorted = sjr;
  std::sort(sorted.begin(), sorted.end(), [](double a, double b) { return a > b; });
  std::vector<int> out;
  for (double v : sjr) {
    std::size_t first = 0;
    while (sorted[first] != v) ++first;
    out.push_back(static_cast<int>((4 * first) / n) + 1);
  }
  return out;
}

// Block minima, best block first.
inline std::array<double, 4> block_minima(const std::vector<double>& sjr) {
  const std::size_t n = sjr.size();
  std::vector<double> sorted = sjr;
  std::sort(sorted.begin(), sorted.end(), [](double a, double b) { return a > b; });
  std::array<double, 4> mins{INFINITY, INFINITY, INFINITY, INFINITY};
  for (std::size_t r = 1; r <= n; ++r) {
    auto& m = mins[(4 * (r - 1)) / n];
    m = std::min(m, sorted[r - 1]);
  }
  return mins;
}

// Fractional ranks by counting: rank = #smaller + (#equal + 1) / 2.
inline std::vector<double> fractional_ranks(const std::vector<double>& v) {
  std::vector<double> out;
  for (double x : v) {
    double less = 0, equal = 0;
    for (double y : v) {
      if (y < x) ++less;
      if (y == x) ++equal;
    }
    out.push_back(less + (equal + 1.0) / 2.0);
  }
  return out;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(fractional_ranks(x), fractional_ranks(y));
}

// Matched 4x4 block of the published CORE comparison: rows Q1..Q4, columns
// A*, A, B, C.
inline constexpr std::array<std::array<int, 4>, 4> kTableCore = {{
    {11, 4, 4, 1},
    {5, 7, 2, 1},
    {0, 2, 6, 1},
    {0, 0, 0, 1},
}};
inline constexpr std::array<int, 4> kTableNaColumn = {3, 7, 9, 9};
inline constexpr std::array<int, 4> kTableNaRow = {51, 407, 402, 793};

inline void table_pairs(std::vector<double>& xs, std::vector<double>& ys) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int k = 0; k < kTableCore[r][c]; ++k) {
        xs.push_back(r + 1);
        ys.push_back(c + 1);
      }
}

// Average-rank Spearman over the 45 pairs above, computed once with the
// counting oracle (and cross-checked against scipy.stats.spearmanr).
inline constexpr double kTableRho = 0.45211986828363093;

}  // namespace oracle

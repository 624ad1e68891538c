#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <string>
#include <vector>

#include "goeval/core.hpp"
#include "goeval/error.hpp"

namespace goeval {

/// |dx| + |dy| + max(|dx|, |dy|): the sum of the L1 and Chebyshev metrics,
/// which yields roughly circular neighbourhoods on the grid.
constexpr int gridcular_distance(Point p, Point q) noexcept {
  const int dx = p.x > q.x ? p.x - q.x : q.x - p.x;
  const int dy = p.y > q.y ? p.y - q.y : q.y - p.y;
  return dx + dy + (dx > dy ? dx : dy);
}

constexpr bool on_board(Point p, int size) noexcept { return p.x >= 1 && p.y >= 1 && p.x <= size && p.y <= size; }

/// Line number of p counted from the nearest edge (1 = first line).
inline int border_distance(Point p, int size) {
  if (!on_board(p, size)) throw DomainError("point " + to_string(p) + " is off a " + std::to_string(size) + " board");
  return std::min({p.x, p.y, size + 1 - p.x, size + 1 - p.y});
}

constexpr int kMinPatternSize = 2;
constexpr int kMaxPatternSize = 6;

/// Offset of a pattern cell relative to its centre.
struct Offset {
  int dx = 0;
  int dy = 0;
  friend constexpr bool operator==(const Offset&, const Offset&) = default;
};

/// All offsets at gridcular distance 1..d from the centre, sorted by (row, column).
inline const std::vector<Offset>& pattern_offsets(int d) {
  static const auto table = [] {
    std::array<std::vector<Offset>, kMaxPatternSize + 1> t;
    for (int size = kMinPatternSize; size <= kMaxPatternSize; ++size) {
      for (int dy = -size; dy <= size; ++dy)
        for (int dx = -size; dx <= size; ++dx) {
          const int dist = gridcular_distance({0, 0}, {dx, dy});
          if (dist >= 1 && dist <= size) t[size].push_back({dx, dy});
        }
    }
    return t;
  }();
  if (d < kMinPatternSize || d > kMaxPatternSize) throw DomainError("pattern size must be in 2..6, got " + std::to_string(d));
  return table[d];
}

} // namespace goeval

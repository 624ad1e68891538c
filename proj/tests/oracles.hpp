#pragma once

// Independent reference implementations used by the tests. Nothing here
// calls into the library's board or pattern code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Cell = std::pair<int, int>; // (x, y), 1-based

/// Plain 2-D grid Go board: 0 empty, 1 black, 2 white. No ko tracking.
struct NaiveBoard {
  int n;
  std::vector<int> g;

  explicit NaiveBoard(int size) : n(size), g(static_cast<std::size_t>(size * size), 0) {}

  bool inside(int x, int y) const { return x >= 1 && y >= 1 && x <= n && y <= n; }
  int at(int x, int y) const { return g[static_cast<std::size_t>((y - 1) * n + (x - 1))]; }
  void put(int x, int y, int v) { g[static_cast<std::size_t>((y - 1) * n + (x - 1))] = v; }

  /// Flood fill: stones of the chain through (x, y) and its liberties.
  std::pair<std::set<Cell>, std::set<Cell>> group(int x, int y) const {
    std::set<Cell> stones, libs;
    const int c = at(x, y);
    std::vector<Cell> stack{{x, y}};
    while (!stack.empty()) {
      auto [cx, cy] = stack.back();
      stack.pop_back();
      if (!stones.insert({cx, cy}).second) continue;
      const int nb[4][2] = {{cx - 1, cy}, {cx + 1, cy}, {cx, cy - 1}, {cx, cy + 1}};
      for (auto& q : nb) {
        if (!inside(q[0], q[1])) continue;
        const int v = at(q[0], q[1]);
        if (v == 0) libs.insert({q[0], q[1]});
        else if (v == c && !stones.count({q[0], q[1]})) stack.push_back({q[0], q[1]});
      }
    }
    return {stones, libs};
  }

  std::size_t liberties(int x, int y) const { return group(x, y).second.size(); }

  /// Places a stone and removes enemy chains left without liberties.
  /// Returns the number of removed stones.
  int play(int colour, int x, int y) {
    put(x, y, colour);
    int removed = 0;
    const int nb[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
    for (auto& q : nb) {
      if (!inside(q[0], q[1]) || at(q[0], q[1]) != 3 - colour) continue;
      auto [stones, libs] = group(q[0], q[1]);
      if (!libs.empty()) continue;
      for (auto [sx, sy] : stones) put(sx, sy, 0);
      removed += static_cast<int>(stones.size());
    }
    return removed;
  }
};

inline int gridcular(int dx, int dy) {
  dx = dx < 0 ? -dx : dx;
  dy = dy < 0 ? -dy : dy;
  return dx + dy + std::max(dx, dy);
}

/// Offsets at distance 1..d, ordered by row then column.
inline std::vector<Cell> neighbourhood(int d) {
  std::vector<Cell> out;
  for (int dy = -d; dy <= d; ++dy)
    for (int dx = -d; dx <= d; ++dx) {
      const int r = gridcular(dx, dy);
      if (r >= 1 && r <= d) out.push_back({dx, dy});
    }
  return out;
}

/// Canonical code of the pattern around (cx, cy): colours swapped when white
/// moves, then the minimum over 4 rotations x optional mirror.
inline std::uint64_t pattern_code(const NaiveBoard& b, int cx, int cy, int d, int to_move) {
  const auto offs = neighbourhood(d);
  auto value = [&](int dx, int dy) -> std::uint64_t {
    const int x = cx + dx, y = cy + dy;
    if (!b.inside(x, y)) return 3;
    int v = b.at(x, y);
    if (to_move == 2 && v != 0) v = 3 - v;
    return static_cast<std::uint64_t>(v);
  };
  std::uint64_t best = UINT64_MAX;
  for (int mirror = 0; mirror < 2; ++mirror)
    for (int rot = 0; rot < 4; ++rot) {
      std::uint64_t code = 0;
      for (auto [dx, dy] : offs) {
        int x = mirror ? -dx : dx, y = dy;
        for (int k = 0; k < rot; ++k) {
          const int t = x;
          x = -y;
          y = t;
        }
        code = (code << 2) | value(x, y);
      }
      best = std::min(best, code);
    }
  return best;
}

/// Rotates/mirrors a pattern given as a map offset -> value.
inline std::map<Cell, int> transform(const std::map<Cell, int>& p, int rot, bool mirror) {
  std::map<Cell, int> out;
  for (auto [o, v] : p) {
    int x = mirror ? -o.first : o.first, y = o.second;
    for (int k = 0; k < rot; ++k) {
      const int t = x;
      x = -y;
      y = t;
    }
    out[{x, y}] = v;
  }
  return out;
}

} // namespace oracle

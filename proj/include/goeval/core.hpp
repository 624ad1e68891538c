#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace goeval {

enum class Color : std::uint8_t { black = 1, white = 2 };

constexpr Color opponent(Color c) noexcept { return c == Color::black ? Color::white : Color::black; }

inline char color_letter(Color c) { return c == Color::black ? 'B' : 'W'; }

/// Board intersection, 1-based: x is the column, y the row.
struct Point {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

struct Move {
  Color color = Color::black;
  std::optional<Point> point; ///< empty for a pass

  bool is_pass() const noexcept { return !point.has_value(); }
  friend bool operator==(const Move&, const Move&) = default;
};

inline std::string to_string(Point p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

} // namespace goeval

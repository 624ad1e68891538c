#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "goeval/core.hpp"
#include "goeval/error.hpp"
#include "goeval/geometry.hpp"

namespace goeval {

enum class Cell : std::uint8_t { empty = 0, black = 1, white = 2 };

constexpr Cell cell_of(Color c) noexcept { return static_cast<Cell>(c); }

class IllegalMove : public std::runtime_error {
public:
  enum class Rule : std::uint8_t { off_board, occupied, suicide, ko };

  IllegalMove(Rule rule, Point p)
    : std::runtime_error(std::string("illegal move at ") + to_string(p) + ": " + rule_name(rule)), rule_(rule), point_(p) {}

  Rule rule() const noexcept { return rule_; }
  Point point() const noexcept { return point_; }

  static const char* rule_name(Rule r) {
    switch (r) {
      case Rule::off_board: return "off board";
      case Rule::occupied: return "point occupied";
      case Rule::suicide: return "suicide";
      case Rule::ko: return "ko recapture";
    }
    return "?";
  }

private:
  Rule rule_;
  Point point_;
};

/// What a single stone placement did to the position.
struct MoveResult {
  int captures = 0;
  bool atari = false;        ///< an adjacent enemy chain was left with one liberty
  bool atari_escape = false; ///< a friendly one-liberty chain now has two or more
};

/// Go position under simple ko with suicide forbidden.
///
/// Chains are not cached; liberties are recomputed by flood fill on demand,
/// which is cheap at 19x19. Not safe for concurrent use, even through const
/// methods: the flood fill reuses scratch buffers.
class Board {
public:
  explicit Board(int size) : size_(size), cells_(static_cast<std::size_t>(size) * size, Cell::empty) {
    if (size < 2 || size > 52) throw DomainError("unsupported board size " + std::to_string(size));
  }

  int size() const noexcept { return size_; }

  Cell at(Point p) const { return cells_[index(p)]; }

  int captured_by(Color c) const noexcept { return prisoners_[c == Color::black ? 0 : 1]; }

  std::optional<Point> ko_point() const noexcept { return ko_point_; }

  int stone_count() const noexcept {
    int n = 0;
    for (Cell c : cells_) n += c != Cell::empty;
    return n;
  }

  /// Puts a setup stone (AB/AW) without legality checks or captures.
  void place_setup(Color c, Point p) {
    check_on_board(p);
    if (cells_[index(p)] != Cell::empty) throw IllegalMove(IllegalMove::Rule::occupied, p);
    cells_[index(p)] = cell_of(c);
  }

  /// Stones of the chain through p (p must be occupied).
  std::vector<Point> chain(Point p) const {
    std::vector<Point> stones;
    flood(index(p), &stones);
    return stones;
  }

  int liberties(Point p) const {
    check_on_board(p);
    if (cells_[index(p)] == Cell::empty) throw DomainError("no stone at " + to_string(p));
    return flood(index(p), nullptr);
  }

  /// Empty points adjacent to the chain through p.
  std::vector<Point> liberty_points(Point p) const {
    std::vector<Point> libs;
    for (Point s : chain(p))
      for_each_neighbor(s, [&](Point q) {
        if (cells_[index(q)] == Cell::empty && std::find(libs.begin(), libs.end(), q) == libs.end()) libs.push_back(q);
      });
    return libs;
  }

  bool is_legal(Color color, Point p) const {
    if (!on_board(p, size_) || cells_[index(p)] != Cell::empty) return false;
    if (ko_point_ && *ko_point_ == p && ko_color_ == color) return false;
    const Cell own = cell_of(color);
    bool legal = false;
    for_each_neighbor(p, [&](Point q) {
      const Cell c = cells_[index(q)];
      if (c == Cell::empty) legal = true;
      else if (c == own) legal = legal || flood(index(q), nullptr) > 1;
      else legal = legal || flood(index(q), nullptr) == 1;
    });
    return legal;
  }

  void pass() noexcept { ko_point_.reset(); }

  MoveResult play(Color color, Point p) {
    check_on_board(p);
    const std::size_t at_idx = index(p);
    if (cells_[at_idx] != Cell::empty) throw IllegalMove(IllegalMove::Rule::occupied, p);
    if (ko_point_ && *ko_point_ == p && ko_color_ == color) throw IllegalMove(IllegalMove::Rule::ko, p);

    const Cell own = cell_of(color);
    const Cell enemy = cell_of(opponent(color));
    bool friend_in_atari = false;
    for_each_neighbor(p, [&](Point q) {
      if (cells_[index(q)] == own && flood(index(q), nullptr) == 1) friend_in_atari = true;
    });

    cells_[at_idx] = own;
    MoveResult result;
    std::optional<Point> last_captured;
    std::vector<Point> stones;
    for_each_neighbor(p, [&](Point q) {
      if (cells_[index(q)] != enemy) return;
      stones.clear();
      if (flood(index(q), &stones) != 0) return;
      for (Point s : stones) cells_[index(s)] = Cell::empty;
      result.captures += static_cast<int>(stones.size());
      last_captured = stones.front();
    });

    stones.clear();
    const int own_libs = flood(at_idx, &stones);
    if (own_libs == 0) {
      cells_[at_idx] = Cell::empty;
      throw IllegalMove(IllegalMove::Rule::suicide, p);
    }

    for_each_neighbor(p, [&](Point q) {
      if (cells_[index(q)] == enemy && flood(index(q), nullptr) == 1) result.atari = true;
    });
    result.atari_escape = friend_in_atari && own_libs >= 2;

    ko_point_.reset();
    if (result.captures == 1 && stones.size() == 1 && own_libs == 1) {
      ko_point_ = last_captured;
      ko_color_ = opponent(color);
    }
    prisoners_[color == Color::black ? 0 : 1] += result.captures;
    return result;
  }

  template <class F>
  void for_each_neighbor(Point p, F&& f) const {
    if (p.x > 1) f(Point{p.x - 1, p.y});
    if (p.x < size_) f(Point{p.x + 1, p.y});
    if (p.y > 1) f(Point{p.x, p.y - 1});
    if (p.y < size_) f(Point{p.x, p.y + 1});
  }

private:
  std::size_t index(Point p) const noexcept { return static_cast<std::size_t>(p.y - 1) * size_ + (p.x - 1); }
  Point point_at(std::size_t i) const noexcept { return {static_cast<int>(i % size_) + 1, static_cast<int>(i / size_) + 1}; }

  void check_on_board(Point p) const {
    if (!on_board(p, size_)) throw IllegalMove(IllegalMove::Rule::off_board, p);
  }

  /// Flood-fills the chain at start; returns its liberty count and optionally its stones.
  int flood(std::size_t start, std::vector<Point>* stones) const {
    if (mark_.size() != cells_.size()) mark_.assign(cells_.size(), 0);
    if (++generation_ == 0) {
      std::fill(mark_.begin(), mark_.end(), 0);
      generation_ = 1;
    }
    const Cell colour = cells_[start];
    stack_.clear();
    stack_.push_back(start);
    mark_[start] = generation_;
    int libs = 0;
    while (!stack_.empty()) {
      const std::size_t i = stack_.back();
      stack_.pop_back();
      const Point p = point_at(i);
      if (stones) stones->push_back(p);
      for_each_neighbor(p, [&](Point q) {
        const std::size_t j = index(q);
        if (mark_[j] == generation_) return;
        if (cells_[j] == Cell::empty) {
          mark_[j] = generation_;
          ++libs;
        } else if (cells_[j] == colour) {
          mark_[j] = generation_;
          stack_.push_back(j);
        }
      });
    }
    return libs;
  }

  int size_;
  std::vector<Cell> cells_;
  int prisoners_[2] = {0, 0};
  std::optional<Point> ko_point_;
  Color ko_color_ = Color::black; ///< side forbidden from retaking at ko_point_

  // Flood-fill scratch space; not part of the logical state.
  mutable std::vector<std::uint32_t> mark_;
  mutable std::vector<std::size_t> stack_;
  mutable std::uint32_t generation_ = 0;
};

} // namespace goeval

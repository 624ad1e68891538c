#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "goeval/board.hpp"
#include "goeval/geometry.hpp"
#include "goeval/pattern.hpp"
#include "goeval/sgf.hpp"

namespace goeval {

constexpr int kPatternSizeCount = kMaxPatternSize - kMinPatternSize + 1;

struct MoveAnnotation {
  int move_number = 0; ///< 1-based index into GameRecord::moves (passes count)
  Color color = Color::black;
  Point point;
  bool atari = false;
  bool atari_escape = false;
  int captures = 0;
  std::optional<int> contiguity; ///< absent for the first move and right after a pass
  int border_distance = 0;
  std::array<RawPattern, kPatternSizeCount> raw_patterns{};
  std::array<PatternKey, kPatternSizeCount> pattern_keys{};

  const PatternKey& key(int d) const { return pattern_keys.at(static_cast<std::size_t>(d - kMinPatternSize)); }
  const RawPattern& raw(int d) const { return raw_patterns.at(static_cast<std::size_t>(d - kMinPatternSize)); }
};

struct AnnotatedGame {
  GameRecord game;
  std::vector<MoveAnnotation> moves;
};

class AnnotationError : public std::runtime_error {
public:
  AnnotationError(int move_number, const std::string& what)
    : std::runtime_error("move " + std::to_string(move_number) + ": " + what), move_number_(move_number) {}
  int move_number() const noexcept { return move_number_; }

private:
  int move_number_;
};

/// Replays the game and produces one annotation per non-pass move.
inline std::vector<MoveAnnotation> annotate_moves(const GameRecord& game) {
  Board board(game.board_size);
  try {
    for (Point p : game.black_setup) board.place_setup(Color::black, p);
    for (Point p : game.white_setup) board.place_setup(Color::white, p);
  } catch (const IllegalMove& e) {
    throw AnnotationError(0, std::string("setup stones: ") + e.what());
  }

  std::vector<MoveAnnotation> out;
  out.reserve(game.moves.size());
  Point previous{0, 0};
  bool has_previous = false;
  for (std::size_t i = 0; i < game.moves.size(); ++i) {
    const Move& m = game.moves[i];
    const int number = static_cast<int>(i) + 1;
    if (m.is_pass()) {
      board.pass();
      has_previous = false;
      continue;
    }
    const Point p = *m.point;
    MoveAnnotation a;
    a.move_number = number;
    a.color = m.color;
    a.point = p;
    if (has_previous) a.contiguity = gridcular_distance(previous, p);
    a.border_distance = border_distance(p, game.board_size);
    for (int d = kMinPatternSize; d <= kMaxPatternSize; ++d)
      a.raw_patterns[static_cast<std::size_t>(d - kMinPatternSize)] = extract_raw_pattern(board, p, d, m.color);

    MoveResult r;
    try {
      r = board.play(m.color, p);
    } catch (const IllegalMove& e) {
      throw AnnotationError(number, e.what());
    }
    a.captures = r.captures;
    a.atari = r.atari;
    a.atari_escape = r.atari_escape;
    for (std::size_t k = 0; k < a.raw_patterns.size(); ++k) a.pattern_keys[k] = canonicalize(a.raw_patterns[k], a.atari, a.atari_escape);
    out.push_back(a);
    previous = p;
    has_previous = true;
  }
  return out;
}

inline AnnotatedGame annotate_game(GameRecord game) {
  AnnotatedGame g;
  g.moves = annotate_moves(game);
  g.game = std::move(game);
  return g;
}

/// Debug dump, one line per annotation:
/// move color x,y atari escape captures contiguity border hash2..hash6
inline void write_annotations(std::ostream& os, const std::vector<MoveAnnotation>& moves) {
  for (const auto& a : moves) {
    os << a.move_number << '\t' << color_letter(a.color) << '\t' << a.point.x << ',' << a.point.y << '\t' << a.atari << '\t'
       << a.atari_escape << '\t' << a.captures << '\t' << (a.contiguity ? std::to_string(*a.contiguity) : "-") << '\t'
       << a.border_distance;
    for (const auto& k : a.pattern_keys) {
      char buf[24];
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(k.hash()));
      os << '\t' << buf;
    }
    os << '\n';
  }
}

} // namespace goeval

#pragma once

// Ten short 9x9 games with annotation tables worked out by hand.
// Each row: colour, x, y (0 = pass), captures, atari, escape, contiguity
// (-1 = absent), line number (0 for passes).

#include <string>
#include <vector>

#include "goeval/goeval.hpp"

namespace scripted {

struct Row {
  char colour;
  int x, y;
  int captures;
  bool atari, escape;
  int contiguity;
  int line;
};

struct Game {
  std::string result;
  std::vector<Row> rows;
};

inline const std::vector<Game>& games() {
  static const std::vector<Game> g = {
      // 1: single stone captured in the centre
      {"B+R",
       {{'B', 3, 3, 0, false, false, -1, 3},
        {'W', 4, 3, 0, false, false, 2, 3},
        {'B', 5, 3, 0, false, false, 2, 3},
        {'W', 7, 7, 0, false, false, 10, 3},
        {'B', 4, 2, 0, true, false, 13, 2},
        {'W', 7, 6, 0, false, false, 11, 3},
        {'B', 4, 4, 1, false, false, 8, 4}}},
      // 2: two-stone capture on the edge, then a pass
      {"W+2.5",
       {{'B', 1, 2, 0, false, false, -1, 1},
        {'W', 1, 1, 0, false, false, 2, 1},
        {'B', 2, 2, 0, false, false, 3, 2},
        {'W', 2, 1, 0, false, false, 2, 1},
        {'B', 3, 1, 2, false, false, 2, 1},
        {'W', 5, 5, 0, false, false, 10, 5},
        {'B', 0, 0, 0, false, false, -1, 0},
        {'W', 5, 4, 0, false, false, -1, 4},
        {'B', 4, 4, 0, false, false, 2, 4}}},
      // 3: ko capture, then black fills the ko and escapes
      {"B+4.5",
       {{'B', 2, 3, 0, false, false, -1, 2},
        {'W', 5, 3, 0, false, false, 6, 3},
        {'B', 3, 2, 0, false, false, 5, 2},
        {'W', 4, 2, 0, false, false, 2, 2},
        {'B', 3, 4, 0, false, false, 5, 3},
        {'W', 4, 4, 0, false, false, 2, 4},
        {'B', 8, 8, 0, false, false, 12, 2},
        {'W', 3, 3, 0, false, false, 15, 3},
        {'B', 4, 3, 1, false, false, 2, 3},
        {'W', 6, 8, 0, false, false, 12, 2},
        {'B', 3, 3, 0, false, true, 13, 3}}},
      // 4: atari answered by extension
      {"W+R",
       {{'B', 5, 5, 0, false, false, -1, 5},
        {'W', 5, 6, 0, false, false, 2, 4},
        {'B', 4, 6, 0, false, false, 2, 4},
        {'W', 2, 2, 0, false, false, 10, 2},
        {'B', 6, 6, 0, true, false, 12, 4},
        {'W', 5, 7, 0, false, true, 3, 3},
        {'B', 5, 8, 0, false, false, 2, 2}}},
      // 5: twelve non-touching moves on every line
      {"B+0.5",
       {{'B', 3, 3, 0, false, false, -1, 3},
        {'W', 7, 7, 0, false, false, 12, 3},
        {'B', 3, 7, 0, false, false, 8, 3},
        {'W', 7, 3, 0, false, false, 12, 3},
        {'B', 5, 5, 0, false, false, 6, 5},
        {'W', 1, 5, 0, false, false, 8, 1},
        {'B', 9, 5, 0, false, false, 16, 1},
        {'W', 5, 1, 0, false, false, 12, 1},
        {'B', 5, 9, 0, false, false, 16, 1},
        {'W', 2, 8, 0, false, false, 7, 2},
        {'B', 8, 2, 0, false, false, 18, 2},
        {'W', 4, 6, 0, false, false, 12, 4}}},
      // 6: corner capture by white, pass, resignation
      {"W+Resign",
       {{'B', 1, 1, 0, false, false, -1, 1},
        {'W', 2, 1, 0, true, false, 2, 1},
        {'B', 5, 5, 0, false, false, 11, 5},
        {'W', 1, 2, 1, false, false, 11, 1},
        {'B', 0, 0, 0, false, false, -1, 0},
        {'W', 2, 2, 0, false, false, -1, 2},
        {'B', 3, 2, 0, false, false, 2, 2}}},
      // 7: three-stone chain surrounded and captured
      {"B+12.5",
       {{'B', 4, 3, 0, false, false, -1, 3},
        {'W', 4, 4, 0, false, false, 2, 4},
        {'B', 5, 3, 0, false, false, 3, 3},
        {'W', 5, 4, 0, false, false, 2, 4},
        {'B', 6, 3, 0, false, false, 3, 3},
        {'W', 6, 4, 0, false, false, 2, 4},
        {'B', 3, 4, 0, false, false, 6, 3},
        {'W', 1, 9, 0, false, false, 12, 1},
        {'B', 7, 4, 0, false, false, 17, 3},
        {'W', 2, 9, 0, false, false, 15, 1},
        {'B', 4, 5, 0, false, false, 10, 4},
        {'W', 8, 8, 0, false, false, 11, 2},
        {'B', 5, 5, 0, true, false, 9, 5},
        {'W', 9, 9, 0, false, false, 12, 1},
        {'B', 6, 5, 3, false, false, 11, 4}}},
      // 8: self-atari punished, then the attacker escapes
      {"W+7.5",
       {{'B', 2, 1, 0, false, false, -1, 1},
        {'W', 3, 1, 0, false, false, 2, 1},
        {'B', 1, 2, 0, false, false, 5, 1},
        {'W', 8, 8, 0, false, false, 20, 2},
        {'B', 2, 3, 0, false, false, 17, 2},
        {'W', 2, 2, 0, true, false, 2, 2},
        {'B', 3, 2, 1, true, false, 2, 2},
        {'W', 4, 1, 0, false, true, 3, 1}}},
      // 9: pass after the first move, void result
      {"Void",
       {{'B', 5, 5, 0, false, false, -1, 5},
        {'W', 0, 0, 0, false, false, -1, 0},
        {'B', 5, 6, 0, false, false, -1, 4},
        {'W', 5, 4, 0, false, false, 4, 4}}},
      // 10: first-line exchange
      {"W+3.5",
       {{'B', 1, 5, 0, false, false, -1, 1},
        {'W', 9, 5, 0, false, false, 16, 1},
        {'B', 1, 6, 0, false, false, 17, 1},
        {'W', 9, 6, 0, false, false, 16, 1},
        {'B', 2, 5, 0, false, false, 15, 2}}},
  };
  return g;
}

inline goeval::GameRecord record(const Game& sg) {
  goeval::GameRecord g;
  g.board_size = 9;
  g.result = goeval::parse_result(sg.result);
  for (const Row& r : sg.rows) {
    const goeval::Color c = r.colour == 'B' ? goeval::Color::black : goeval::Color::white;
    if (r.x == 0) g.moves.push_back({c, std::nullopt});
    else g.moves.push_back({c, goeval::Point{r.x, r.y}});
  }
  return g;
}

} // namespace scripted

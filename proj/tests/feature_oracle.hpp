#pragma once

// Naive recount of the five feature families for sets of scripted games.
// Works from the hand tables and the naive board/pattern code only.

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

#include "goeval/goeval.hpp"
#include "oracles.hpp"
#include "scripted_games.hpp"

namespace oracle {

using Key = std::tuple<int, std::uint64_t, bool, bool>; // size, code, atari, escape

struct Occurrence {
  int move_number;
  char colour;
  Key key;
};

/// Every (move, pattern size) occurrence of a scripted game, in move order.
inline std::vector<Occurrence> occurrences(const scripted::Game& g) {
  std::vector<Occurrence> out;
  NaiveBoard nb(9);
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    const auto& r = g.rows[i];
    if (r.x == 0) continue;
    const int mover = r.colour == 'B' ? 1 : 2;
    for (int d = 2; d <= 6; ++d) out.push_back({static_cast<int>(i) + 1, r.colour, {d, pattern_code(nb, r.x, r.y, d, mover), r.atari, r.escape}});
    nb.play(mover, r.x, r.y);
  }
  return out;
}

/// Two passes: collect the distinct keys, then count each one by a full scan.
inline std::vector<std::pair<Key, std::uint64_t>> naive_vocabulary(const std::vector<scripted::Game>& games, std::size_t n) {
  std::vector<Occurrence> all;
  for (const auto& g : games) {
    auto o = occurrences(g);
    all.insert(all.end(), o.begin(), o.end());
  }
  std::vector<Key> distinct;
  for (const auto& o : all)
    if (std::find(distinct.begin(), distinct.end(), o.key) == distinct.end()) distinct.push_back(o.key);
  std::vector<std::pair<Key, std::uint64_t>> counted;
  for (const Key& k : distinct) {
    std::uint64_t c = 0;
    for (const auto& o : all) c += o.key == k;
    counted.push_back({k, c});
  }
  std::sort(counted.begin(), counted.end(), [](const auto& a, const auto& b) { return a.second != b.second ? a.second > b.second : a.first < b.first; });
  if (counted.size() > n) counted.resize(n);
  return counted;
}

struct SetMember {
  std::size_t game; // index into scripted::games()
  char colour;      // player of interest
};

struct Counts {
  std::map<Key, long> patterns;
  long sente = 0, gote = 0;
  std::vector<long> border;
  std::vector<long> captures; // own, opponent, difference per stage
  long win_pts = 0, win_res = 0, loss_pts = 0, loss_res = 0;
  double win_margin = 0, loss_margin = 0;
};

inline int bin(const std::vector<std::pair<int, int>>& bins, int v) {
  for (std::size_t i = 0; i < bins.size(); ++i)
    if (v >= bins[i].first && (bins[i].second < 0 || v <= bins[i].second)) return static_cast<int>(i);
  return -1;
}

/// Integer counts for a set under the strength defaults with the given omega.
inline Counts recount(const std::vector<SetMember>& set, int omega) {
  const std::vector<std::pair<int, int>> move_bins{{1, 10}, {11, 64}, {65, 200}, {201, -1}};
  const std::vector<std::pair<int, int>> dist_bins{{1, 2}, {3, 3}, {4, 4}, {5, -1}};
  const std::vector<std::pair<int, int>> cap_bins{{1, 60}, {61, 240}, {241, -1}};
  Counts c;
  c.border.assign(16, 0);
  c.captures.assign(9, 0);
  for (const SetMember& m : set) {
    const scripted::Game& g = scripted::games()[m.game];
    for (const auto& o : occurrences(g)) ++c.patterns[o.key];

    // omega-local sequences over the non-pass moves
    bool open = false;
    char starter = 0, ender = 0;
    auto close = [&] {
      if (open && starter == m.colour) (starter != ender ? c.sente : c.gote) += 1;
      open = false;
    };
    for (std::size_t i = 0; i < g.rows.size(); ++i) {
      const auto& r = g.rows[i];
      if (r.x == 0) continue;
      if (!open || r.contiguity < 0 || r.contiguity >= omega) {
        close();
        open = true;
        starter = r.colour;
      }
      ender = r.colour;
      const int number = static_cast<int>(i) + 1;
      if (r.colour == m.colour) ++c.border[static_cast<std::size_t>(bin(move_bins, number) * 4 + bin(dist_bins, r.line))];
      if (r.captures > 0) c.captures[static_cast<std::size_t>(bin(cap_bins, number) * 3 + (r.colour == m.colour ? 0 : 1))] += r.captures;
    }
    close();

    const std::string& re = g.result;
    if (re.size() > 2 && re[1] == '+') {
      const bool won = re[0] == m.colour;
      const bool resign = re[2] == 'R';
      if (resign) (won ? c.win_res : c.loss_res) += 1;
      else {
        (won ? c.win_pts : c.loss_pts) += 1;
        (won ? c.win_margin : c.loss_margin) += std::stod(re.substr(2));
      }
    }
  }
  for (std::size_t b = 0; b < 3; ++b) c.captures[b * 3 + 2] = c.captures[b * 3] - c.captures[b * 3 + 1];
  return c;
}

} // namespace oracle

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "goeval/board.hpp"
#include "goeval/dataset.hpp"
#include "goeval/error.hpp"
#include "goeval/geometry.hpp"
#include "goeval/rng.hpp"
#include "goeval/sgf.hpp"

namespace goeval {

/// How a player's latent strength biases the synthetic move policy.
///
/// With weakness u in [0, 1] (0 = 6 dan, 1 = 20 kyu) a move is chosen as:
///   capture an atari'd chain     with p = capture_bias * u
///   else answer locally          with p = base_local + local_bias * (1 - u)
///   else play on lines 1-2       with p = base_low + low_line_bias * u
///   else play on line 3 or higher.
struct SynthProfile {
  std::string name = "null";
  double low_line_bias = 0.0;
  double capture_bias = 0.0;
  double local_bias = 0.0;
  double resign_bias = 0.0;
  double base_low = 0.3;
  double base_local = 0.35;
  int min_moves = 150;
  int max_moves = 250;

  static SynthProfile null_profile() { return {}; }

  static SynthProfile planted() {
    SynthProfile p;
    p.name = "planted";
    p.low_line_bias = 0.5;
    p.capture_bias = 0.6;
    p.local_bias = 0.3;
    p.resign_bias = 0.6;
    p.base_low = 0.2;
    p.base_local = 0.3;
    return p;
  }

  static SynthProfile named(std::string_view name) {
    if (name == "planted") return planted();
    if (name == "null") return null_profile();
    throw DomainError("unknown synthetic profile '" + std::string(name) + "' (expected planted, null, or a profile file)");
  }

  /// "key = value" lines; `base = planted|null` selects the starting point.
  static SynthProfile parse(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> kv;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      const std::string_view s = detail::trim(std::string_view(line).substr(0, line.find('#')));
      if (s.empty()) continue;
      const auto eq = s.find('=');
      if (eq == std::string_view::npos) throw DomainError("profile line without '=': " + std::string(s));
      kv.emplace_back(std::string(detail::trim(s.substr(0, eq))), std::string(detail::trim(s.substr(eq + 1))));
    }
    SynthProfile p;
    for (const auto& [k, v] : kv)
      if (k == "base") p = named(v);
    for (const auto& [k, v] : kv) {
      if (k == "base") continue;
      if (k == "name") {
        p.name = v;
        continue;
      }
      auto num = detail::parse_double(v);
      if (!num) throw DomainError("profile key " + k + ": not a number");
      if (k == "low_line_bias") p.low_line_bias = *num;
      else if (k == "capture_bias") p.capture_bias = *num;
      else if (k == "local_bias") p.local_bias = *num;
      else if (k == "resign_bias") p.resign_bias = *num;
      else if (k == "base_low") p.base_low = *num;
      else if (k == "base_local") p.base_local = *num;
      else if (k == "min_moves") p.min_moves = static_cast<int>(*num);
      else if (k == "max_moves") p.max_moves = static_cast<int>(*num);
      else throw DomainError("unknown profile key '" + k + "'");
    }
    p.validate();
    return p;
  }

  void validate() const {
    auto prob_ok = [](double base, double bias) { return base >= 0 && base <= 1 && base + bias >= 0 && base + bias <= 1; };
    if (!prob_ok(base_low, low_line_bias)) throw DomainError("profile: base_low + low_line_bias leaves [0, 1]");
    if (!prob_ok(base_local, local_bias)) throw DomainError("profile: base_local + local_bias leaves [0, 1]");
    if (!prob_ok(0.0, capture_bias)) throw DomainError("profile: capture_bias leaves [0, 1]");
    if (!prob_ok(0.5 - std::abs(resign_bias) / 2, std::abs(resign_bias))) throw DomainError("profile: resign_bias leaves [-1, 1]");
    if (min_moves < 1 || max_moves < min_moves || max_moves > 600) throw DomainError("profile: bad move-count range");
  }
};

inline double weakness_of(double target) { return std::clamp((target - kStrongestTarget) / (kWeakestTarget - kStrongestTarget), 0.0, 1.0); }

inline Rank rank_of_target(int target) {
  if (target <= 0) return {1 - target, Rank::Class::dan};
  return {target, Rank::Class::kyu};
}

namespace detail {

inline std::optional<Point> random_point_where(const Board& b, Color c, Rng& rng, auto&& accept) {
  const int n = b.size();
  for (int attempt = 0; attempt < 60; ++attempt) {
    const Point p{static_cast<int>(rng.uniform_int(1, n)), static_cast<int>(rng.uniform_int(1, n))};
    if (accept(p) && b.is_legal(c, p)) return p;
  }
  std::vector<Point> all;
  for (int y = 1; y <= n; ++y)
    for (int x = 1; x <= n; ++x)
      if (accept(Point{x, y}) && b.is_legal(c, Point{x, y})) all.push_back({x, y});
  if (all.empty()) return std::nullopt;
  return all[rng.index(all.size())];
}

inline std::optional<Point> capturing_move(const Board& b, Color c, Rng& rng) {
  std::vector<Point> options;
  const Cell enemy = cell_of(opponent(c));
  for (int y = 1; y <= b.size(); ++y)
    for (int x = 1; x <= b.size(); ++x) {
      const Point p{x, y};
      if (b.at(p) != enemy) continue;
      const auto libs = b.liberty_points(p);
      if (libs.size() == 1 && b.is_legal(c, libs.front()) && std::find(options.begin(), options.end(), libs.front()) == options.end())
        options.push_back(libs.front());
    }
  if (options.empty()) return std::nullopt;
  return options[rng.index(options.size())];
}

} // namespace detail

/// Plays one legal synthetic game between two players of the given weakness.
inline GameRecord synth_game(const SynthProfile& prof, double weakness_black, double weakness_white, Rng& rng) {
  GameRecord g;
  g.board_size = 19;
  g.komi = 6.5;
  Board board(19);
  const int length = static_cast<int>(rng.uniform_int(prof.min_moves, prof.max_moves));
  Point last{0, 0};
  bool has_last = false;
  Color to_move = Color::black;
  for (int i = 0; i < length; ++i) {
    const double u = to_move == Color::black ? weakness_black : weakness_white;
    std::optional<Point> choice;
    if (rng.bernoulli(prof.capture_bias * u)) choice = detail::capturing_move(board, to_move, rng);
    if (!choice && has_last && rng.bernoulli(prof.base_local + prof.local_bias * (1.0 - u))) {
      const Point centre = last;
      choice = detail::random_point_where(board, to_move, rng, [&](Point p) { return gridcular_distance(p, centre) < 5; });
    }
    if (!choice) {
      const bool low = rng.bernoulli(prof.base_low + prof.low_line_bias * u);
      choice = detail::random_point_where(board, to_move, rng, [&](Point p) { return (border_distance(p, 19) <= 2) == low; });
    }
    if (!choice) choice = detail::random_point_where(board, to_move, rng, [](Point) { return true; });
    if (!choice) {
      board.pass();
      g.moves.push_back({to_move, std::nullopt});
      has_last = false;
    } else {
      board.play(to_move, *choice);
      g.moves.push_back({to_move, choice});
      last = *choice;
      has_last = true;
    }
    to_move = opponent(to_move);
  }
  return g;
}

struct SynthGame {
  std::string file_name;
  std::string player_id;
  GameRecord game;
};

struct SynthCorpus {
  std::vector<SynthGame> games;
  std::vector<std::pair<std::string, double>> labels; ///< player id -> latent target
};

/// Generates n_players players with latent targets spread evenly over
/// [-5, 20], each with games_per_player games against same-rank opponents.
/// Output depends only on (profile, counts, seed).
inline SynthCorpus synth_corpus(const SynthProfile& prof, std::size_t n_players, std::size_t games_per_player, std::uint64_t seed) {
  prof.validate();
  if (n_players == 0 || games_per_player == 0) throw DomainError("synthetic corpus needs players and games");
  SynthCorpus corpus;
  const int ranks = static_cast<int>(kWeakestTarget - kStrongestTarget) + 1;
  for (std::size_t p = 0; p < n_players; ++p) {
    char id[32];
    std::snprintf(id, sizeof id, "p%03zu", p);
    const int target = static_cast<int>(kStrongestTarget) + static_cast<int>(p * static_cast<std::size_t>(ranks) / n_players);
    const Rank rank = rank_of_target(target);
    const double u = weakness_of(target);
    corpus.labels.emplace_back(id, target);
    for (std::size_t k = 0; k < games_per_player; ++k) {
      Rng rng(derive_seed(derive_seed(seed, p), k));
      const Color colour = k % 2 == 0 ? Color::black : Color::white;
      GameRecord g = synth_game(prof, u, u, rng);
      char opp[96];
      std::snprintf(opp, sizeof opp, "opp_%s_%02zu", id, k);
      g.black_name = colour == Color::black ? id : opp;
      g.white_name = colour == Color::black ? opp : id;
      g.black_rank = rank;
      g.white_rank = rank;
      const Color winner = rng.bernoulli(0.5) ? Color::black : Color::white;
      const double p_resign = std::clamp(0.5 + prof.resign_bias * (0.5 - u), 0.0, 1.0);
      if (rng.bernoulli(p_resign)) {
        g.result = {Outcome::Kind::win_by_resignation, winner, 0.0};
      } else {
        g.result = {Outcome::Kind::win_by_points, winner, static_cast<double>(rng.uniform_int(0, 40)) + 0.5};
      }
      char file[96];
      std::snprintf(file, sizeof file, "%s_g%02zu.sgf", id, k);
      corpus.games.push_back({file, id, std::move(g)});
    }
  }
  return corpus;
}

} // namespace goeval

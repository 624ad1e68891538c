#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "goeval/annotate.hpp"
#include "goeval/error.hpp"
#include "goeval/rng.hpp"
#include "goeval/sgf.hpp"

namespace goeval {

/// A game together with the colour of the player it is attributed to.
struct ColoredGame {
  std::shared_ptr<const AnnotatedGame> game;
  Color color = Color::black;
};

struct ColoredGameSet {
  std::string player_id;
  std::vector<ColoredGame> entries;

  std::size_t size() const noexcept { return entries.size(); }
};

struct LabeledSet {
  ColoredGameSet set;
  std::vector<double> targets;
};

/// One game of a corpus, optionally attributed to a single player.
struct CorpusEntry {
  std::shared_ptr<const AnnotatedGame> game;
  std::string player_id;           ///< empty: both sides are candidates
  std::optional<Rank> rank_override;
};

constexpr std::size_t kMinStrengthSet = 10;
constexpr std::size_t kMaxStrengthSet = 50;
constexpr double kStrongestTarget = -5.0; // 6 dan
constexpr double kWeakestTarget = 20.0;   // 20 kyu

constexpr std::size_t kStyleGamesPerPlayer = 192;
constexpr std::size_t kStyleSets = 12;
constexpr std::size_t kStyleSetSize = 16;
constexpr std::size_t kStyleScales = 4;

inline const std::array<std::string, kStyleScales>& style_scale_names() {
  static const std::array<std::string, kStyleScales> names{"territoriality", "orthodoxity", "aggressivity", "thickness"};
  return names;
}

namespace detail {
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}
} // namespace detail

/// Draws a subsample size for an oversized group and picks that many members.
/// Returns member indices in ascending order.
inline std::vector<std::size_t> subsample_group(std::size_t group_size, Rng& rng) {
  std::vector<std::size_t> idx(group_size);
  for (std::size_t i = 0; i < group_size; ++i) idx[i] = i;
  if (group_size <= kMaxStrengthSet) return idx;
  const auto k = static_cast<std::size_t>(rng.uniform_int(kMinStrengthSet, kMaxStrengthSet));
  for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.index(group_size - i)]);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

/// Groups even, 19x19 games by (player, rank at the time) and applies the
/// 10..50 sample-size policy. Targets come from rank_to_target.
inline std::vector<LabeledSet> assemble_strength_sets(std::span<const CorpusEntry> corpus, std::uint64_t seed) {
  struct Group {
    Rank rank;
    std::vector<ColoredGame> games;
  };
  std::map<std::string, Group> groups;

  for (const CorpusEntry& entry : corpus) {
    if (!entry.game) continue;
    const GameRecord& g = entry.game->game;
    if (g.board_size != 19 || g.handicap != 0 || !g.black_setup.empty() || !g.white_setup.empty() || g.moves.empty()) continue;
    for (Color c : {Color::black, Color::white}) {
      const std::string& name = g.name_of(c);
      if (name.empty()) continue;
      if (!entry.player_id.empty() && name != entry.player_id) continue;
      const std::optional<Rank> rank = entry.rank_override ? entry.rank_override : g.rank_of(c);
      if (!rank) continue;
      const double y = rank_to_target(*rank);
      if (y < kStrongestTarget || y > kWeakestTarget) continue;
      auto& group = groups[name + "@" + format_rank(*rank)];
      group.rank = *rank;
      group.games.push_back({entry.game, c});
    }
  }

  std::vector<LabeledSet> out;
  for (auto& [key, group] : groups) {
    if (group.games.size() < kMinStrengthSet) continue;
    Rng rng(derive_seed(seed, detail::fnv1a(key)));
    LabeledSet ls;
    ls.set.player_id = key;
    for (std::size_t i : subsample_group(group.games.size(), rng)) ls.set.entries.push_back(group.games[i]);
    ls.targets = {rank_to_target(group.rank)};
    out.push_back(std::move(ls));
  }
  return out;
}

/// Randomly splits one professional's 192 games into 12 sets of 16, each
/// labelled with the same four style scores.
inline std::vector<LabeledSet> assemble_style_sets(std::span<const ColoredGame> games, const std::array<double, kStyleScales>& labels,
                                                   const std::string& player_id, std::uint64_t seed) {
  if (games.size() != kStyleGamesPerPlayer)
    throw DomainError("style assembly needs exactly 192 games for " + player_id + ", got " + std::to_string(games.size()));
  for (double v : labels)
    if (!(v >= 1.0 && v <= 10.0)) throw DomainError("style label outside [1, 10] for " + player_id);

  std::vector<std::size_t> order(games.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(derive_seed(seed, detail::fnv1a(player_id)));
  rng.shuffle(std::span<std::size_t>(order));

  std::vector<LabeledSet> out(kStyleSets);
  for (std::size_t s = 0; s < kStyleSets; ++s) {
    out[s].set.player_id = player_id;
    out[s].targets.assign(labels.begin(), labels.end());
    for (std::size_t j = 0; j < kStyleSetSize; ++j) out[s].set.entries.push_back(games[order[s * kStyleSetSize + j]]);
  }
  return out;
}

} // namespace goeval

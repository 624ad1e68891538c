#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <vector>

#include "goeval/annotate.hpp"
#include "goeval/dataset.hpp"
#include "goeval/error.hpp"
#include "goeval/features.hpp"
#include "goeval/vocabulary.hpp"

namespace goeval {

inline double set_size(const ColoredGameSet& set) {
  if (set.entries.empty()) throw DomainError("colored game set '" + set.player_id + "' is empty");
  return static_cast<double>(set.entries.size());
}

/// Vocabulary occurrence counts over the set, divided by |GC|. The result
/// has vocab.requested() components; slots the corpus could not fill stay 0.
inline std::vector<double> pattern_feature(const ColoredGameSet& set, const PatternVocabulary& vocab, const FeatureConfig& config) {
  const double n = set_size(set);
  std::vector<double> c(vocab.requested(), 0.0);
  for (const ColoredGame& cg : set.entries) {
    for (const MoveAnnotation& m : cg.game->moves) {
      if (!config.patterns_all_moves && m.color != cg.color) continue;
      for (int d : config.pattern_sizes)
        if (auto i = vocab.index_of(m.key(d))) c[*i] += 1.0;
    }
  }
  for (double& v : c) v /= n;
  return c;
}

/// A maximal run of moves, each within gridcular distance < omega of its predecessor.
struct LocalSequence {
  std::size_t first = 0; ///< index into the annotation list
  std::size_t last = 0;
  Color starter = Color::black;
  Color ender = Color::black;

  bool sente() const noexcept { return starter != ender; }
};

/// Splits a game's moves into omega-local sequences. A pass (missing
/// contiguity) always starts a new sequence.
inline std::vector<LocalSequence> local_sequences(std::span<const MoveAnnotation> moves, int omega) {
  std::vector<LocalSequence> seqs;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const bool continues = !seqs.empty() && moves[i].contiguity && *moves[i].contiguity < omega;
    if (continues) {
      seqs.back().last = i;
      seqs.back().ender = moves[i].color;
    } else {
      seqs.push_back({i, i, moves[i].color, moves[i].color});
    }
  }
  return seqs;
}

/// (sente sequences, gote sequences) started by the player of interest, per game.
inline std::vector<double> sente_gote_feature(const ColoredGameSet& set, int omega) {
  if (omega < 1) throw DomainError("omega must be >= 1");
  const double n = set_size(set);
  double sente = 0.0, gote = 0.0;
  for (const ColoredGame& cg : set.entries) {
    for (const LocalSequence& s : local_sequences(cg.game->moves, omega)) {
      if (s.starter != cg.color) continue;
      (s.sente() ? sente : gote) += 1.0;
    }
  }
  return {sente / n, gote / n};
}

/// Histogram over (move-number bin, border-distance bin), move bin major.
inline std::vector<double> border_distance_feature(const ColoredGameSet& set, const FeatureConfig& config) {
  const double n = set_size(set);
  const std::size_t cols = config.by_dist.size();
  std::vector<double> h(config.border_length(), 0.0);
  for (const ColoredGame& cg : set.entries) {
    for (const MoveAnnotation& m : cg.game->moves) {
      if (!config.border_all_moves && m.color != cg.color) continue;
      h[config.by_moves_border.bin_of(m.move_number) * cols + config.by_dist.bin_of(m.border_distance)] += 1.0;
    }
  }
  for (double& v : h) v /= n;
  return h;
}

/// Per game stage: (stones captured by the player, by the opponent, difference).
inline std::vector<double> captured_stones_feature(const ColoredGameSet& set, const FeatureConfig& config) {
  const double n = set_size(set);
  std::vector<double> h(config.capture_length(), 0.0);
  for (const ColoredGame& cg : set.entries) {
    for (const MoveAnnotation& m : cg.game->moves) {
      if (m.captures == 0) continue;
      const std::size_t bin = config.by_moves_capture.bin_of(m.move_number);
      h[bin * 3 + (m.color == cg.color ? 0 : 1)] += m.captures;
    }
  }
  for (std::size_t b = 0; b < config.by_moves_capture.size(); ++b) h[b * 3 + 2] = h[b * 3] - h[b * 3 + 1];
  for (double& v : h) v /= n;
  return h;
}

/// Wins/losses by counting and by resignation (each / |GC|), then the mean
/// point margin of counted wins and of counted losses. Other outcomes only
/// contribute to |GC|.
inline std::vector<double> winloss_feature(const ColoredGameSet& set) {
  const double n = set_size(set);
  double win_pts = 0, win_res = 0, loss_pts = 0, loss_res = 0, win_margin = 0, loss_margin = 0;
  for (const ColoredGame& cg : set.entries) {
    const Outcome& o = cg.game->game.result;
    if (o.kind == Outcome::Kind::other || !o.winner) continue;
    const bool won = *o.winner == cg.color;
    if (o.kind == Outcome::Kind::win_by_points) {
      (won ? win_pts : loss_pts) += 1;
      (won ? win_margin : loss_margin) += o.margin;
    } else {
      (won ? win_res : loss_res) += 1;
    }
  }
  return {win_pts / n, win_res / n, loss_pts / n, loss_res / n, win_pts > 0 ? win_margin / win_pts : 0.0,
          loss_pts > 0 ? loss_margin / loss_pts : 0.0};
}

struct Segment {
  std::string name;
  std::size_t offset = 0;
  std::size_t length = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

inline const std::array<std::string, 5>& segment_names() {
  static const std::array<std::string, 5> names{"patterns", "sente_gote", "border", "captures", "winloss"};
  return names;
}

inline std::vector<Segment> segment_layout(const FeatureConfig& config) {
  const std::array<std::size_t, 5> lengths{config.pattern_length(), 2, config.border_length(), config.capture_length(), 6};
  std::vector<Segment> segs;
  std::size_t off = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    segs.push_back({segment_names()[i], off, lengths[i]});
    off += lengths[i];
  }
  return segs;
}

struct EvaluationVector {
  std::vector<double> values;
  std::vector<Segment> segments;

  const Segment& segment(std::string_view name) const {
    for (const auto& s : segments)
      if (s.name == name) return s;
    throw DomainError("unknown segment '" + std::string(name) + "'");
  }

  std::span<const double> view(std::string_view name) const {
    const Segment& s = segment(name);
    return std::span<const double>(values).subspan(s.offset, s.length);
  }
};

/// Concatenates the five feature families in fixed order.
inline EvaluationVector evaluate_set(const ColoredGameSet& set, const PatternVocabulary& vocab, const FeatureConfig& config) {
  if (vocab.requested() != config.pattern_length())
    throw DomainError("vocabulary has " + std::to_string(vocab.requested()) + " slots but the configuration expects " +
                      std::to_string(config.pattern_length()));
  EvaluationVector ev;
  ev.segments = segment_layout(config);
  ev.values.reserve(config.vector_length());
  auto append = [&](const std::vector<double>& part) { ev.values.insert(ev.values.end(), part.begin(), part.end()); };
  append(pattern_feature(set, vocab, config));
  append(sente_gote_feature(set, config.omega));
  append(border_distance_feature(set, config));
  append(captured_stones_feature(set, config));
  append(winloss_feature(set));
  return ev;
}

} // namespace goeval

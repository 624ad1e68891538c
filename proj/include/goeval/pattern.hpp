#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "goeval/board.hpp"
#include "goeval/error.hpp"
#include "goeval/geometry.hpp"

namespace goeval {

enum class PatternCell : std::uint8_t { empty = 0, black = 1, white = 2, off_board = 3 };

constexpr std::size_t kMaxPatternCells = 28; // cells within gridcular distance 6

/// Stones around a move, in pattern_offsets(size) order.
struct RawPattern {
  std::uint8_t size = kMinPatternSize;
  Color to_move = Color::black;
  std::array<PatternCell, kMaxPatternCells> cells{};

  std::size_t cell_count() const { return pattern_offsets(size).size(); }

  friend bool operator==(const RawPattern&, const RawPattern&) = default;
};

/// Canonical pattern identity plus the two atari flags of the move.
struct PatternKey {
  std::uint8_t size = 0;
  std::uint64_t code = 0; ///< 2 bits per cell, first cell in the most significant position
  bool atari = false;
  bool atari_escape = false;

  friend auto operator<=>(const PatternKey&, const PatternKey&) = default;

  /// Canonical byte encoding: the cell code as big-endian bytes.
  std::string bytes() const {
    const std::size_t nbits = 2 * pattern_offsets(size).size();
    const std::size_t nbytes = (nbits + 7) / 8;
    const std::uint64_t aligned = code << (64 - nbits);
    std::string out;
    for (std::size_t i = 0; i < nbytes; ++i) out.push_back(static_cast<char>((aligned >> (56 - 8 * i)) & 0xff));
    return out;
  }

  /// FNV-1a over size, code and flags.
  std::uint64_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::uint64_t byte) {
      h ^= byte;
      h *= 0x100000001b3ULL;
    };
    mix(size);
    for (int i = 0; i < 8; ++i) mix((code >> (8 * i)) & 0xff);
    mix(static_cast<std::uint64_t>(atari) | (static_cast<std::uint64_t>(atari_escape) << 1));
    return h;
  }

  /// Text form "d<size>:<hex code>:<atari><escape>", e.g. "d3:1a04:10".
  std::string to_string() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "d%u:%llx:%d%d", static_cast<unsigned>(size), static_cast<unsigned long long>(code), atari ? 1 : 0,
                  atari_escape ? 1 : 0);
    return buf;
  }

  static std::optional<PatternKey> from_string(std::string_view s) {
    unsigned size = 0;
    unsigned long long code = 0;
    int a = 0, e = 0;
    const std::string tmp(s);
    char tail = 0;
    if (std::sscanf(tmp.c_str(), "d%u:%llx:%1d%1d%c", &size, &code, &a, &e, &tail) != 4) return std::nullopt;
    if (size < kMinPatternSize || size > kMaxPatternSize || a > 1 || e > 1) return std::nullopt;
    return PatternKey{static_cast<std::uint8_t>(size), code, a == 1, e == 1};
  }
};

struct PatternKeyHash {
  std::size_t operator()(const PatternKey& k) const noexcept { return static_cast<std::size_t>(k.hash()); }
};

/// Records every point at gridcular distance 1..d around center, as the
/// board stands before the move is played.
inline RawPattern extract_raw_pattern(const Board& board, Point center, int d, Color to_move) {
  const auto& offsets = pattern_offsets(d);
  RawPattern raw;
  raw.size = static_cast<std::uint8_t>(d);
  raw.to_move = to_move;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const Point q{center.x + offsets[i].dx, center.y + offsets[i].dy};
    raw.cells[i] = on_board(q, board.size()) ? static_cast<PatternCell>(board.at(q)) : PatternCell::off_board;
  }
  return raw;
}

namespace detail {

/// Image of (dx, dy) under dihedral element t (0..7): t & 4 swaps axes, then
/// t & 1 mirrors x and t & 2 mirrors y.
constexpr Offset dihedral(Offset o, int t) noexcept {
  Offset r = (t & 4) ? Offset{o.dy, o.dx} : o;
  if (t & 1) r.dx = -r.dx;
  if (t & 2) r.dy = -r.dy;
  return r;
}

/// perm[t][i]: index of the cell that lands on slot i under transform t.
inline const auto& dihedral_permutations(int d) {
  using Table = std::array<std::array<std::uint8_t, kMaxPatternCells>, 8>;
  static const auto tables = [] {
    std::array<Table, kMaxPatternSize + 1> all{};
    for (int size = kMinPatternSize; size <= kMaxPatternSize; ++size) {
      const auto& offs = pattern_offsets(size);
      for (int t = 0; t < 8; ++t)
        for (std::size_t i = 0; i < offs.size(); ++i) {
          const Offset src = dihedral(offs[i], t);
          for (std::size_t j = 0; j < offs.size(); ++j)
            if (offs[j] == src) all[size][t][i] = static_cast<std::uint8_t>(j);
        }
    }
    return all;
  }();
  return tables[d];
}

constexpr PatternCell swap_colour(PatternCell c) noexcept {
  if (c == PatternCell::black) return PatternCell::white;
  if (c == PatternCell::white) return PatternCell::black;
  return c;
}

} // namespace detail

/// Colour-normalizes to black-to-move, then takes the smallest encoding over
/// the eight rotations and reflections.
inline PatternKey canonicalize(const RawPattern& raw, bool atari, bool atari_escape) {
  const std::size_t n = raw.cell_count();
  std::array<PatternCell, kMaxPatternCells> cells = raw.cells;
  if (raw.to_move == Color::white)
    for (std::size_t i = 0; i < n; ++i) cells[i] = detail::swap_colour(cells[i]);

  const auto& perms = detail::dihedral_permutations(raw.size);
  std::uint64_t best = UINT64_MAX;
  for (const auto& perm : perms) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < n; ++i) code = (code << 2) | static_cast<std::uint64_t>(cells[perm[i]]);
    best = std::min(best, code);
  }
  return {raw.size, best, atari, atari_escape};
}

} // namespace goeval

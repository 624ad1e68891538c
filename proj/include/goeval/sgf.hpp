#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "goeval/core.hpp"
#include "goeval/error.hpp"

namespace goeval {

struct Outcome {
  enum class Kind : std::uint8_t { win_by_points, win_by_resignation, other };

  Kind kind = Kind::other;
  std::optional<Color> winner;
  double margin = 0.0; ///< only meaningful for win_by_points

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct Rank {
  enum class Class : std::uint8_t { kyu, dan };

  int grade = 1;
  Class cls = Class::kyu;

  friend bool operator==(const Rank&, const Rank&) = default;
};

struct GameRecord {
  int board_size = 19;
  std::vector<Move> moves;
  std::vector<Point> black_setup; ///< AB stones (handicap placement)
  std::vector<Point> white_setup; ///< AW stones
  Outcome result;
  std::optional<Rank> black_rank;
  std::optional<Rank> white_rank;
  std::string black_name;
  std::string white_name;
  int handicap = 0;
  double komi = 0.0;

  const std::string& name_of(Color c) const { return c == Color::black ? black_name : white_name; }
  const std::optional<Rank>& rank_of(Color c) const { return c == Color::black ? black_rank : white_rank; }

  friend bool operator==(const GameRecord&, const GameRecord&) = default;
};

namespace detail {

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

inline std::optional<int> parse_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct SgfValue {
  std::string text;
  std::size_t offset = 0;
};

struct SgfProperty {
  std::string ident;
  std::vector<SgfValue> values;
};

using SgfNode = std::vector<SgfProperty>;

/// Recursive-descent reader for the SGF tree grammar. Collects the main line
/// (first variation at every branch) and validates the rest for structure.
class SgfReader {
public:
  explicit SgfReader(std::string_view text) : text_(text) {}

  std::vector<SgfNode> read_main_line() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '(') throw ParseError("expected '(' starting a game tree", pos_);
    std::vector<SgfNode> nodes;
    read_tree(&nodes);
    return nodes;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void read_tree(std::vector<SgfNode>* main) {
    const std::size_t open = pos_;
    ++pos_; // '('
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ';') throw ParseError("game tree without a node", pos_);
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) throw ParseError("unbalanced game tree opened here", open);
      if (text_[pos_] != ';') break;
      ++pos_;
      SgfNode node = read_node();
      if (main) main->push_back(std::move(node));
    }
    bool first_child = true;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) throw ParseError("unbalanced game tree opened here", open);
      const char c = text_[pos_];
      if (c == ')') {
        ++pos_;
        return;
      }
      if (c != '(') throw ParseError(std::string("unexpected character '") + c + "'", pos_);
      read_tree(first_child ? main : nullptr);
      first_child = false;
    }
  }

  SgfNode read_node() {
    SgfNode node;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) return node;
      const char c = text_[pos_];
      if (!std::isalpha(static_cast<unsigned char>(c))) return node;
      SgfProperty prop;
      const std::size_t ident_start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
        // FF[3] allows lowercase letters inside identifiers; only the capitals are significant.
        if (std::isupper(static_cast<unsigned char>(text_[pos_]))) prop.ident.push_back(text_[pos_]);
        ++pos_;
      }
      if (prop.ident.empty()) throw ParseError("property identifier without capital letters", ident_start);
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '[') throw ParseError("property " + prop.ident + " has no value", pos_);
      while (true) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '[') break;
        prop.values.push_back(read_value());
      }
      node.push_back(std::move(prop));
    }
  }

  SgfValue read_value() {
    SgfValue v;
    const std::size_t open = pos_;
    ++pos_; // '['
    v.offset = pos_;
    while (true) {
      if (pos_ >= text_.size()) throw ParseError("unterminated property value", open);
      const char c = text_[pos_++];
      if (c == ']') return v;
      if (c == '\\') {
        if (pos_ >= text_.size()) throw ParseError("unterminated property value", open);
        const char next = text_[pos_++];
        if (next == '\n' || next == '\r') continue; // soft line break
        v.text.push_back(next);
      } else {
        v.text.push_back(c);
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline int sgf_coord(char c) {
  if (c >= 'a' && c <= 'z') return c - 'a' + 1;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 27;
  return -1;
}

inline char sgf_letter(int v) { return v <= 26 ? static_cast<char>('a' + v - 1) : static_cast<char>('A' + v - 27); }

/// Decodes a move value; empty optional means pass.
inline std::optional<Point> decode_move_point(const SgfValue& v, int size) {
  std::string_view s = trim(v.text);
  if (s.empty()) return std::nullopt;
  if (s == "tt" && size <= 19) return std::nullopt;
  if (s.size() != 2) throw ParseError("invalid coordinate '" + v.text + "'", v.offset);
  const Point p{sgf_coord(s[0]), sgf_coord(s[1])};
  if (p.x < 1 || p.y < 1 || p.x > size || p.y > size) {
    throw ParseError("coordinate '" + v.text + "' outside " + std::to_string(size) + "x" + std::to_string(size) + " board", v.offset);
  }
  return p;
}

inline void decode_point_list(const SgfValue& v, int size, std::vector<Point>& out) {
  std::string_view s = trim(v.text);
  auto decode = [&](std::string_view c) {
    if (c.size() != 2) throw ParseError("invalid coordinate '" + v.text + "'", v.offset);
    const Point p{sgf_coord(c[0]), sgf_coord(c[1])};
    if (p.x < 1 || p.y < 1 || p.x > size || p.y > size) throw ParseError("setup coordinate '" + v.text + "' off board", v.offset);
    return p;
  };
  if (s.size() == 5 && s[2] == ':') {
    const Point a = decode(s.substr(0, 2));
    const Point b = decode(s.substr(3, 2));
    for (int y = std::min(a.y, b.y); y <= std::max(a.y, b.y); ++y)
      for (int x = std::min(a.x, b.x); x <= std::max(a.x, b.x); ++x) out.push_back({x, y});
    return;
  }
  out.push_back(decode(s));
}

} // namespace detail

/// Interprets an SGF RE value. Anything unrecognized is Kind::other.
inline Outcome parse_result(std::string_view token) {
  Outcome out;
  const std::string s = detail::lower(detail::trim(token));
  if (s.size() < 3 || (s[0] != 'b' && s[0] != 'w') || s[1] != '+') return out;
  const Color winner = s[0] == 'b' ? Color::black : Color::white;
  const std::string_view rest = std::string_view(s).substr(2);
  if (rest == "r" || rest == "resign" || rest == "resignation") {
    out.kind = Outcome::Kind::win_by_resignation;
    out.winner = winner;
    return out;
  }
  if (auto margin = detail::parse_double(rest); margin && *margin >= 0.0) {
    out.kind = Outcome::Kind::win_by_points;
    out.winner = winner;
    out.margin = *margin;
  }
  return out;
}

inline std::string format_result(const Outcome& o) {
  if (o.kind == Outcome::Kind::other || !o.winner) return {};
  std::string s = std::string(1, color_letter(*o.winner)) + "+";
  if (o.kind == Outcome::Kind::win_by_resignation) return s + "R";
  return s + detail::format_double(o.margin);
}

/// Accepts "6d", "20k", "1-dan", "3 kyu" (case-insensitive). Returns nullopt
/// for anything else, including grades outside kyu 1..30 / dan 1..9.
inline std::optional<Rank> parse_rank(std::string_view text) {
  const std::string s = detail::lower(detail::trim(text));
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == 0 || i > 2) return std::nullopt;
  const int grade = *detail::parse_int(std::string_view(s).substr(0, i));
  std::string_view suffix = detail::trim(std::string_view(s).substr(i));
  if (!suffix.empty() && suffix.front() == '-') suffix = detail::trim(suffix.substr(1));
  Rank r{grade, Rank::Class::kyu};
  if (suffix == "k" || suffix == "kyu") {
    if (grade < 1 || grade > 30) return std::nullopt;
  } else if (suffix == "d" || suffix == "dan") {
    if (grade < 1 || grade > 9) return std::nullopt;
    r.cls = Rank::Class::dan;
  } else {
    return std::nullopt;
  }
  return r;
}

inline std::string format_rank(const Rank& r) { return std::to_string(r.grade) + (r.cls == Rank::Class::kyu ? "k" : "d"); }

/// Regression target for a rank: kyu g -> g, dan g -> 1 - g.
inline double rank_to_target(const Rank& r) {
  if (r.cls == Rank::Class::kyu) {
    if (r.grade < 1 || r.grade > 30) throw DomainError("kyu grade out of range: " + std::to_string(r.grade));
    return r.grade;
  }
  if (r.grade < 1 || r.grade > 9) throw DomainError("dan grade out of range: " + std::to_string(r.grade));
  return 1 - r.grade;
}

/// Parses the main line of a single SGF game tree.
inline GameRecord parse_sgf(std::string_view text) {
  detail::SgfReader reader(text);
  const std::vector<detail::SgfNode> nodes = reader.read_main_line();

  GameRecord g;
  // SZ must be known before any coordinate is decoded, wherever it appears.
  for (const auto& node : nodes) {
    for (const auto& prop : node) {
      if (prop.ident != "SZ") continue;
      const auto& v = prop.values.front();
      std::string_view s = detail::trim(v.text);
      if (auto colon = s.find(':'); colon != std::string_view::npos) {
        if (s.substr(0, colon) != s.substr(colon + 1)) throw ParseError("rectangular boards are not supported", v.offset);
        s = s.substr(0, colon);
      }
      auto size = detail::parse_int(s);
      if (!size || *size < 5 || *size > 52) throw ParseError("unsupported board size '" + v.text + "'", v.offset);
      g.board_size = *size;
    }
  }

  for (const auto& node : nodes) {
    for (const auto& prop : node) {
      const auto& id = prop.ident;
      const auto& first = prop.values.front();
      if (id == "B" || id == "W") {
        g.moves.push_back({id == "B" ? Color::black : Color::white, detail::decode_move_point(first, g.board_size)});
      } else if (id == "AB" || id == "AW") {
        auto& out = id == "AB" ? g.black_setup : g.white_setup;
        for (const auto& v : prop.values) detail::decode_point_list(v, g.board_size, out);
      } else if (id == "RE") {
        g.result = parse_result(first.text);
      } else if (id == "HA") {
        auto ha = detail::parse_int(first.text);
        if (!ha || *ha < 0) throw ParseError("invalid handicap '" + first.text + "'", first.offset);
        g.handicap = *ha;
      } else if (id == "KM") {
        if (auto km = detail::parse_double(first.text)) g.komi = *km;
      } else if (id == "BR") {
        g.black_rank = parse_rank(first.text);
      } else if (id == "WR") {
        g.white_rank = parse_rank(first.text);
      } else if (id == "PB") {
        g.black_name = std::string(detail::trim(first.text));
      } else if (id == "PW") {
        g.white_name = std::string(detail::trim(first.text));
      }
    }
  }
  return g;
}

namespace detail {
inline std::string escape_value(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == ']' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline std::string encode_point(Point p) { return {sgf_letter(p.x), sgf_letter(p.y)}; }
} // namespace detail

/// Writes the record back as a single-line FF[4] main line.
inline std::string serialize_sgf(const GameRecord& g) {
  std::string s = "(;GM[1]FF[4]SZ[" + std::to_string(g.board_size) + "]";
  if (g.handicap) s += "HA[" + std::to_string(g.handicap) + "]";
  s += "KM[" + detail::format_double(g.komi) + "]";
  if (!g.black_name.empty()) s += "PB[" + detail::escape_value(g.black_name) + "]";
  if (!g.white_name.empty()) s += "PW[" + detail::escape_value(g.white_name) + "]";
  if (g.black_rank) s += "BR[" + format_rank(*g.black_rank) + "]";
  if (g.white_rank) s += "WR[" + format_rank(*g.white_rank) + "]";
  if (auto re = format_result(g.result); !re.empty()) s += "RE[" + re + "]";
  if (!g.black_setup.empty()) {
    s += "AB";
    for (Point p : g.black_setup) s += "[" + detail::encode_point(p) + "]";
  }
  if (!g.white_setup.empty()) {
    s += "AW";
    for (Point p : g.white_setup) s += "[" + detail::encode_point(p) + "]";
  }
  for (const Move& m : g.moves) {
    s += ";";
    s += color_letter(m.color);
    s += "[" + (m.point ? detail::encode_point(*m.point) : std::string()) + "]";
  }
  s += ")\n";
  return s;
}

} // namespace goeval

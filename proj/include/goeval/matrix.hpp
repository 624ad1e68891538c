#pragma once

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "goeval/error.hpp"
#include "goeval/evaluate.hpp"
#include "goeval/sgf.hpp"

namespace goeval {

struct MatrixRow {
  std::string player_id;
  std::vector<double> targets;
  std::vector<double> values;
  friend bool operator==(const MatrixRow&, const MatrixRow&) = default;
};

/// Evaluation vectors of many sets with their targets, as persisted between
/// extraction and training.
struct EvaluationMatrix {
  std::vector<std::string> target_names;
  std::vector<Segment> segments;
  std::vector<MatrixRow> rows;

  std::size_t dims() const { return segments.empty() ? 0 : segments.back().offset + segments.back().length; }

  const Segment& segment(std::string_view name) const {
    for (const auto& s : segments)
      if (s.name == name) return s;
    throw DomainError("unknown segment '" + std::string(name) + "'");
  }

  friend bool operator==(const EvaluationMatrix&, const EvaluationMatrix&) = default;
};

/// Tab-separated layout:
///   #goeval-matrix v1 <tab> targets=y <tab> segments=patterns:0:1000,...
///   player_id <tab> y <tab> patterns.0 ... winloss.5
///   <one row per set>
inline void write_matrix(std::ostream& os, const EvaluationMatrix& m) {
  os << "#goeval-matrix v1\ttargets=";
  for (std::size_t i = 0; i < m.target_names.size(); ++i) os << (i ? "," : "") << m.target_names[i];
  os << "\tsegments=";
  for (std::size_t i = 0; i < m.segments.size(); ++i)
    os << (i ? "," : "") << m.segments[i].name << ':' << m.segments[i].offset << ':' << m.segments[i].length;
  os << "\nplayer_id";
  for (const auto& t : m.target_names) os << '\t' << t;
  for (const auto& s : m.segments)
    for (std::size_t j = 0; j < s.length; ++j) os << '\t' << s.name << '.' << j;
  os << '\n';
  for (const auto& r : m.rows) {
    os << r.player_id;
    for (double t : r.targets) os << '\t' << detail::format_double(t);
    for (double v : r.values) os << '\t' << detail::format_double(v);
    os << '\n';
  }
}

namespace detail {
inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}
} // namespace detail

inline EvaluationMatrix read_matrix(std::istream& is) {
  EvaluationMatrix m;
  std::string line;
  if (!std::getline(is, line) || line.rfind("#goeval-matrix v1", 0) != 0) throw InputError("matrix: missing '#goeval-matrix v1' header");
  for (const auto& field : detail::split(line, '\t')) {
    if (field.rfind("targets=", 0) == 0) {
      m.target_names = detail::split(field.substr(8), ',');
    } else if (field.rfind("segments=", 0) == 0) {
      std::size_t expect = 0;
      for (const auto& seg : detail::split(field.substr(9), ',')) {
        const auto parts = detail::split(seg, ':');
        auto off = parts.size() == 3 ? detail::parse_int(parts[1]) : std::nullopt;
        auto len = parts.size() == 3 ? detail::parse_int(parts[2]) : std::nullopt;
        if (!off || !len || *off < 0 || *len < 0 || static_cast<std::size_t>(*off) != expect) throw InputError("matrix: bad segment '" + seg + "'");
        m.segments.push_back({parts[0], static_cast<std::size_t>(*off), static_cast<std::size_t>(*len)});
        expect += static_cast<std::size_t>(*len);
      }
    }
  }
  if (m.target_names.empty() || m.segments.empty()) throw InputError("matrix: header lacks targets or segments");
  if (!std::getline(is, line)) throw InputError("matrix: missing column header row");
  const std::size_t width = 1 + m.target_names.size() + m.dims();
  if (detail::split(line, '\t').size() != width) throw InputError("matrix: column header row has the wrong width");

  std::size_t row_no = 0;
  while (std::getline(is, line)) {
    ++row_no;
    if (line.empty()) continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() != width)
      throw InputError("matrix row " + std::to_string(row_no) + ": expected " + std::to_string(width) + " fields, got " +
                       std::to_string(fields.size()));
    MatrixRow r;
    r.player_id = fields[0];
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto v = detail::parse_double(fields[i]);
      if (!v || !std::isfinite(*v)) throw InputError("matrix row " + std::to_string(row_no) + ": bad number '" + fields[i] + "'");
      (i <= m.target_names.size() ? r.targets : r.values).push_back(*v);
    }
    m.rows.push_back(std::move(r));
  }
  return m;
}

} // namespace goeval

#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "goeval/error.hpp"
#include "goeval/geometry.hpp"
#include "goeval/sgf.hpp"

namespace goeval {

/// Closed integer interval; hi == INT_MAX stands for an open upper end.
struct Interval {
  int lo = 1;
  int hi = INT_MAX;

  bool contains(int v) const noexcept { return v >= lo && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Ordered, disjoint intervals covering [1, inf).
class IntervalList {
public:
  IntervalList() = default;

  explicit IntervalList(std::vector<Interval> bins) : bins_(std::move(bins)) {
    if (bins_.empty()) throw DomainError("interval list is empty");
    if (bins_.front().lo != 1) throw DomainError("interval list must start at 1");
    for (std::size_t i = 0; i < bins_.size(); ++i) {
      if (bins_[i].hi < bins_[i].lo) throw DomainError("interval with hi < lo");
      if (i + 1 < bins_.size() && (bins_[i].hi == INT_MAX || bins_[i + 1].lo != bins_[i].hi + 1))
        throw DomainError("intervals must be contiguous and ordered");
    }
    if (bins_.back().hi != INT_MAX) throw DomainError("last interval must be open-ended");
  }

  /// Parses "1-10,11-64,65-200,201-".
  static IntervalList parse(std::string_view text) {
    std::vector<Interval> bins;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
      const std::string_view s = detail::trim(item);
      const auto dash = s.find('-');
      Interval iv;
      auto lo = detail::parse_int(dash == std::string_view::npos ? s : s.substr(0, dash));
      if (!lo) throw DomainError("bad interval '" + std::string(s) + "'");
      iv.lo = *lo;
      if (dash == std::string_view::npos) {
        iv.hi = iv.lo;
      } else if (detail::trim(s.substr(dash + 1)).empty()) {
        iv.hi = INT_MAX;
      } else {
        auto hi = detail::parse_int(s.substr(dash + 1));
        if (!hi) throw DomainError("bad interval '" + std::string(s) + "'");
        iv.hi = *hi;
      }
      bins.push_back(iv);
    }
    return IntervalList(std::move(bins));
  }

  std::string to_string() const {
    std::string s;
    for (const auto& b : bins_) {
      if (!s.empty()) s += ',';
      s += std::to_string(b.lo);
      if (b.hi == INT_MAX) s += '-';
      else if (b.hi != b.lo) s += '-' + std::to_string(b.hi);
    }
    return s;
  }

  std::size_t size() const noexcept { return bins_.size(); }
  const std::vector<Interval>& bins() const noexcept { return bins_; }

  std::size_t bin_of(int v) const {
    for (std::size_t i = 0; i < bins_.size(); ++i)
      if (bins_[i].contains(v)) return i;
    throw DomainError("value " + std::to_string(v) + " not covered by intervals");
  }

  friend bool operator==(const IntervalList&, const IntervalList&) = default;

private:
  std::vector<Interval> bins_;
};

struct FeatureConfig {
  std::string preset = "STRENGTH";
  int vocab_size = 1000;
  int omega = 10;
  IntervalList by_dist = IntervalList::parse("1-2,3,4,5-");
  IntervalList by_moves_border = IntervalList::parse("1-10,11-64,65-200,201-");
  IntervalList by_moves_capture = IntervalList::parse("1-60,61-240,241-");
  std::vector<int> pattern_sizes{2, 3, 4, 5, 6};
  bool patterns_all_moves = true; ///< count patterns of both players' moves
  bool border_all_moves = false;  ///< border histogram over both players' moves

  std::size_t pattern_length() const { return static_cast<std::size_t>(vocab_size); }
  std::size_t border_length() const { return by_moves_border.size() * by_dist.size(); }
  std::size_t capture_length() const { return by_moves_capture.size() * 3; }
  std::size_t vector_length() const { return pattern_length() + 2 + border_length() + capture_length() + 6; }

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;

  static FeatureConfig strength() { return FeatureConfig{}; }

  static FeatureConfig style() {
    FeatureConfig c;
    c.preset = "STYLE";
    c.vocab_size = 600;
    c.omega = 5;
    c.by_moves_border = IntervalList::parse("1-16,17-64,65-160,161-");
    return c;
  }

  static FeatureConfig preset_named(std::string_view name) {
    const std::string n = detail::lower(name);
    if (n == "strength") return strength();
    if (n == "style") return style();
    throw DomainError("unknown preset '" + std::string(name) + "' (expected STRENGTH or STYLE)");
  }

  void validate() const {
    if (vocab_size < 1) throw DomainError("vocab_size must be >= 1");
    if (omega < 1) throw DomainError("omega must be >= 1");
    if (pattern_sizes.empty()) throw DomainError("pattern_sizes is empty");
    for (int d : pattern_sizes)
      if (d < kMinPatternSize || d > kMaxPatternSize) throw DomainError("pattern size outside 2..6");
  }

  /// Applies "key = value" lines. A preset key resets to that preset first,
  /// so the remaining keys override it regardless of order.
  void apply(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      const std::string_view s = detail::trim(std::string_view(line).substr(0, hash));
      if (s.empty()) continue;
      const auto eq = s.find('=');
      if (eq == std::string_view::npos) throw InputError("config line " + std::to_string(lineno) + ": expected key = value");
      kv.emplace_back(detail::lower(detail::trim(s.substr(0, eq))), std::string(detail::trim(s.substr(eq + 1))));
    }
    for (const auto& [k, v] : kv)
      if (k == "preset") *this = preset_named(v);
    for (const auto& [k, v] : kv) set(k, v);
    validate();
  }

  void set(const std::string& key, const std::string& value) {
    auto as_int = [&] {
      auto v = detail::parse_int(value);
      if (!v) throw InputError("config key " + key + ": expected an integer, got '" + value + "'");
      return *v;
    };
    auto as_bool = [&] {
      const std::string v = detail::lower(value);
      if (v == "1" || v == "true" || v == "yes") return true;
      if (v == "0" || v == "false" || v == "no") return false;
      throw InputError("config key " + key + ": expected a boolean, got '" + value + "'");
    };
    try {
      if (key == "preset") return;
      if (key == "vocab_size") vocab_size = as_int();
      else if (key == "omega") omega = as_int();
      else if (key == "by_dist") by_dist = IntervalList::parse(value);
      else if (key == "by_moves_border") by_moves_border = IntervalList::parse(value);
      else if (key == "by_moves_capture") by_moves_capture = IntervalList::parse(value);
      else if (key == "patterns_all_moves") patterns_all_moves = as_bool();
      else if (key == "border_all_moves") border_all_moves = as_bool();
      else if (key == "pattern_sizes") {
        pattern_sizes.clear();
        std::istringstream in(value);
        std::string item;
        while (std::getline(in, item, ',')) {
          auto d = detail::parse_int(item);
          if (!d) throw InputError("config key pattern_sizes: bad entry '" + item + "'");
          pattern_sizes.push_back(*d);
        }
        std::sort(pattern_sizes.begin(), pattern_sizes.end());
        pattern_sizes.erase(std::unique(pattern_sizes.begin(), pattern_sizes.end()), pattern_sizes.end());
      } else {
        throw InputError("unknown config key '" + key + "'");
      }
    } catch (const DomainError& e) {
      throw InputError("config key " + key + ": " + e.what());
    }
  }

  std::string to_text() const {
    std::string sizes;
    for (int d : pattern_sizes) sizes += (sizes.empty() ? "" : ",") + std::to_string(d);
    std::string s;
    s += "preset = " + preset + "\n";
    s += "vocab_size = " + std::to_string(vocab_size) + "\n";
    s += "omega = " + std::to_string(omega) + "\n";
    s += "by_dist = " + by_dist.to_string() + "\n";
    s += "by_moves_border = " + by_moves_border.to_string() + "\n";
    s += "by_moves_capture = " + by_moves_capture.to_string() + "\n";
    s += "pattern_sizes = " + sizes + "\n";
    s += std::string("patterns_all_moves = ") + (patterns_all_moves ? "true" : "false") + "\n";
    s += std::string("border_all_moves = ") + (border_all_moves ? "true" : "false") + "\n";
    return s;
  }
};

} // namespace goeval

#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "goeval/annotate.hpp"
#include "goeval/error.hpp"
#include "goeval/pattern.hpp"

namespace goeval {

/// The N most frequent canonical patterns of a corpus, most frequent first.
class PatternVocabulary {
public:
  struct Entry {
    PatternKey key;
    std::uint64_t count = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  PatternVocabulary() = default;

  PatternVocabulary(std::vector<Entry> entries, std::size_t requested) : entries_(std::move(entries)), requested_(requested) {
    for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].key, i);
  }

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t requested() const noexcept { return requested_; }
  /// How many slots are unfilled because the corpus had fewer distinct keys.
  std::size_t shortfall() const noexcept { return requested_ > entries_.size() ? requested_ - entries_.size() : 0; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  std::optional<std::size_t> index_of(const PatternKey& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const PatternVocabulary& a, const PatternVocabulary& b) {
    return a.entries_ == b.entries_ && a.requested_ == b.requested_;
  }

private:
  std::vector<Entry> entries_;
  std::size_t requested_ = 0;
  std::unordered_map<PatternKey, std::size_t, PatternKeyHash> index_;
};

inline const AnnotatedGame& deref(const AnnotatedGame& g) { return g; }
template <class Ptr>
const AnnotatedGame& deref(const Ptr& p) {
  return *p;
}

/// Keeps the top-n (count desc, key asc) of a frequency table.
inline PatternVocabulary top_patterns(const std::unordered_map<PatternKey, std::uint64_t, PatternKeyHash>& counts, std::size_t n) {
  std::vector<PatternVocabulary::Entry> all;
  all.reserve(counts.size());
  for (const auto& [k, c] : counts) all.push_back({k, c});
  auto by_rank = [](const auto& a, const auto& b) { return a.count != b.count ? a.count > b.count : a.key < b.key; };
  if (all.size() > n) {
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(), by_rank);
    all.resize(n);
  } else {
    std::sort(all.begin(), all.end(), by_rank);
  }
  return PatternVocabulary(std::move(all), n);
}

/// Tallies one occurrence per move per pattern size over the whole corpus.
template <class GameRange>
PatternVocabulary build_vocabulary(const GameRange& corpus, std::size_t n, std::span<const int> sizes) {
  if (n < 1) throw DomainError("vocabulary size must be >= 1");
  std::unordered_map<PatternKey, std::uint64_t, PatternKeyHash> counts;
  std::size_t games = 0;
  for (const auto& item : corpus) {
    const AnnotatedGame& g = deref(item);
    ++games;
    for (const MoveAnnotation& m : g.moves)
      for (int d : sizes) ++counts[m.key(d)];
  }
  if (games == 0) throw DomainError("cannot build a vocabulary from an empty corpus");
  return top_patterns(counts, n);
}

inline void write_vocabulary(std::ostream& os, const PatternVocabulary& v) {
  os << "#goeval-vocab v1\trequested=" << v.requested() << "\tentries=" << v.size() << '\n';
  for (const auto& e : v.entries()) os << e.key.to_string() << '\t' << e.count << '\n';
}

inline PatternVocabulary read_vocabulary(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("#goeval-vocab v1", 0) != 0) throw InputError("not a goeval vocabulary file");
  std::size_t requested = 0;
  if (auto p = line.find("requested="); p != std::string::npos) requested = std::stoull(line.substr(p + 10));
  std::vector<PatternVocabulary::Entry> entries;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    auto key = PatternKey::from_string(std::string_view(line).substr(0, tab));
    if (!key || tab == std::string::npos) throw InputError("vocabulary line " + std::to_string(lineno) + " is malformed");
    entries.push_back({*key, std::stoull(line.substr(tab + 1))});
  }
  if (requested == 0) requested = entries.size();
  return PatternVocabulary(std::move(entries), requested);
}

} // namespace goeval

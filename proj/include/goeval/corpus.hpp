#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "goeval/annotate.hpp"
#include "goeval/dataset.hpp"
#include "goeval/error.hpp"
#include "goeval/io.hpp"
#include "goeval/parallel.hpp"
#include "goeval/sgf.hpp"

namespace goeval {

/// One manifest line: path <tab> [player id] <tab> [rank override].
struct ManifestEntry {
  std::filesystem::path path;
  std::string player_id;
  std::optional<Rank> rank_override;
  int line = 0;
};

/// Reads a corpus manifest. Blank lines and '#' comments are skipped;
/// relative paths resolve against the manifest's directory. Fields are
/// tab-separated, or whitespace-separated when a line has no tab.
inline std::vector<ManifestEntry> parse_manifest(std::string_view text, const std::filesystem::path& base_dir) {
  std::vector<ManifestEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::vector<std::string> fields;
    if (line.find('\t') != std::string::npos) {
      std::istringstream fs(line);
      std::string f;
      while (std::getline(fs, f, '\t')) fields.emplace_back(detail::trim(f));
    } else {
      std::istringstream fs{std::string(trimmed)};
      std::string f;
      while (fs >> f) fields.push_back(f);
    }
    ManifestEntry e;
    e.line = lineno;
    e.path = fields[0];
    if (e.path.is_relative()) e.path = base_dir / e.path;
    if (fields.size() > 1) e.player_id = fields[1];
    if (fields.size() > 2 && !fields[2].empty()) {
      e.rank_override = parse_rank(fields[2]);
      if (!e.rank_override) throw InputError("manifest line " + std::to_string(lineno) + ": bad rank override '" + fields[2] + "'");
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_file(path), path.parent_path());
}

struct LoadedCorpus {
  std::vector<CorpusEntry> entries;
  std::size_t unreadable = 0; ///< files that could not be read or parsed
  std::size_t skipped = 0;    ///< games that failed replay or had no moves
};

/// Reads, parses and annotates every manifest entry. Failures are logged
/// per path and counted, never fatal.
inline LoadedCorpus load_corpus(const std::vector<ManifestEntry>& manifest, unsigned jobs, std::ostream& log) {
  struct Slot {
    std::shared_ptr<const AnnotatedGame> game;
    std::string error;
    bool unreadable = false;
  };
  std::vector<Slot> slots(manifest.size());
  parallel_for(manifest.size(), jobs, [&](std::size_t i) {
    Slot& s = slots[i];
    std::string text;
    try {
      text = read_file(manifest[i].path);
    } catch (const InputError& e) {
      s.unreadable = true;
      s.error = e.what();
      return;
    }
    try {
      GameRecord g = parse_sgf(text);
      if (g.moves.empty()) {
        s.error = "game has no moves";
        return;
      }
      s.game = std::make_shared<const AnnotatedGame>(annotate_game(std::move(g)));
    } catch (const ParseError& e) {
      s.unreadable = true;
      s.error = std::string("parse error: ") + e.what();
    } catch (const AnnotationError& e) {
      s.error = std::string("replay failed at ") + e.what();
    }
  });

  LoadedCorpus out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].game) {
      log << "skip " << manifest[i].path.string() << ": " << slots[i].error << '\n';
      (slots[i].unreadable ? out.unreadable : out.skipped) += 1;
      continue;
    }
    out.entries.push_back({slots[i].game, manifest[i].player_id, manifest[i].rank_override});
  }
  return out;
}

/// Style labels: player id followed by four scores per line.
inline std::map<std::string, std::array<double, kStyleScales>> parse_style_labels(std::string_view text) {
  std::map<std::string, std::array<double, kStyleScales>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream fs{std::string(t)};
    std::string id;
    fs >> id;
    std::array<double, kStyleScales> v{};
    for (double& x : v)
      if (!(fs >> x)) throw InputError("labels line " + std::to_string(lineno) + ": expected a player id and 4 scores");
    out[id] = v;
  }
  return out;
}

/// Groups a style corpus into colored games per player. The colour of each
/// game is the side whose PB/PW name equals the manifest's player id.
inline std::map<std::string, std::vector<ColoredGame>> style_games_by_player(const std::vector<CorpusEntry>& corpus, std::ostream& log) {
  std::map<std::string, std::vector<ColoredGame>> out;
  for (const auto& e : corpus) {
    const auto& g = e.game->game;
    if (e.player_id.empty()) {
      log << "style corpus entry without a player id ignored\n";
      continue;
    }
    if (g.black_name == e.player_id) out[e.player_id].push_back({e.game, Color::black});
    else if (g.white_name == e.player_id) out[e.player_id].push_back({e.game, Color::white});
    else log << "player " << e.player_id << " does not appear in a listed game; ignored\n";
  }
  return out;
}

} // namespace goeval

#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "goeval/corpus.hpp"
#include "goeval/crossval.hpp"
#include "goeval/evaluate.hpp"
#include "goeval/features.hpp"
#include "goeval/io.hpp"
#include "goeval/matrix.hpp"
#include "goeval/model.hpp"
#include "goeval/report.hpp"
#include "goeval/synth.hpp"
#include "goeval/vocabulary.hpp"

// Implementations of the `goeval` subcommands. Each returns a process exit
// code (0 ok, 1 input problem) and throws for anything it cannot handle.

namespace goeval::cmd {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

struct Common {
  std::string preset = "STRENGTH";
  std::string config_path;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

/// preset, then the config file (whose own preset key, if any, wins over the flag).
inline FeatureConfig resolve_config(const Common& c) {
  FeatureConfig cfg = FeatureConfig::preset_named(c.preset);
  if (!c.config_path.empty()) cfg.apply(read_file(c.config_path));
  cfg.validate();
  return cfg;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

/// Writes <output>.run.json describing how the output was produced.
inline void write_run_manifest(const fs::path& output, const std::string& command, const Common& c, nlohmann::json inputs,
                               const FeatureConfig* cfg = nullptr, nlohmann::json extra = nlohmann::json::object()) {
  nlohmann::json j;
  j["command"] = command;
  j["preset"] = c.preset;
  j["config_path"] = c.config_path;
  j["seed"] = c.seed;
  j["jobs"] = c.jobs;
  j["inputs"] = std::move(inputs);
  j["output"] = output.string();
  if (cfg) j["feature_config"] = cfg->to_text();
  j["options"] = std::move(extra);
  j["timestamp"] = utc_timestamp();
  fs::path p = output;
  p += ".run.json";
  write_file_atomic(p, j.dump(2) + "\n");
}

/// Labelled sets of a corpus: style splits when labels are given, strength
/// grouping otherwise.
struct AssembledSets {
  std::vector<LabeledSet> sets;
  std::vector<std::string> target_names;
  bool partial = false;
};

inline AssembledSets assemble_sets(const LoadedCorpus& corpus, const std::string& labels_path, std::uint64_t seed, std::ostream& log) {
  AssembledSets out;
  if (labels_path.empty()) {
    out.sets = assemble_strength_sets(corpus.entries, seed);
    out.target_names = {"strength"};
    return out;
  }
  const auto labels = parse_style_labels(read_file(labels_path));
  out.target_names.assign(style_scale_names().begin(), style_scale_names().end());
  for (const auto& [player, games] : style_games_by_player(corpus.entries, log)) {
    auto it = labels.find(player);
    if (it == labels.end()) {
      log << "no style labels for " << player << "; skipped\n";
      out.partial = true;
      continue;
    }
    try {
      auto sets = assemble_style_sets(games, it->second, player, seed);
      out.sets.insert(out.sets.end(), sets.begin(), sets.end());
    } catch (const DomainError& e) {
      log << e.what() << "; skipped\n";
      out.partial = true;
    }
  }
  return out;
}

inline std::vector<EvaluationVector> evaluate_sets(const std::vector<LabeledSet>& sets, const PatternVocabulary& vocab, const FeatureConfig& cfg,
                                                   unsigned jobs) {
  std::vector<EvaluationVector> evs(sets.size());
  parallel_for(sets.size(), jobs, [&](std::size_t i) { evs[i] = evaluate_set(sets[i].set, vocab, cfg); });
  return evs;
}

inline PatternVocabulary load_vocabulary(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_vocabulary(in);
}

inline EvaluationMatrix load_matrix(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_matrix(in);
}

// ---------------------------------------------------------------------------

struct BuildVocabOptions {
  Common common;
  std::string manifest;
  std::string out;
};

inline int build_vocab(const BuildVocabOptions& o, std::ostream& log) {
  const FeatureConfig cfg = resolve_config(o.common);
  const auto manifest = read_manifest(o.manifest);
  if (manifest.empty()) throw InputError("manifest " + o.manifest + " lists no games");
  const LoadedCorpus corpus = load_corpus(manifest, o.common.jobs, log);
  if (corpus.entries.empty()) throw InputError("no usable games in " + o.manifest);

  std::vector<std::shared_ptr<const AnnotatedGame>> games;
  for (const auto& e : corpus.entries) games.push_back(e.game);
  const PatternVocabulary vocab = build_vocabulary(games, static_cast<std::size_t>(cfg.vocab_size), cfg.pattern_sizes);

  std::ostringstream ss;
  write_vocabulary(ss, vocab);
  write_file_atomic(o.out, ss.str());
  write_run_manifest(o.out, "build-vocab", o.common, {{"manifest", o.manifest}}, &cfg);

  log << "vocabulary: " << vocab.size() << " patterns from " << games.size() << " games";
  if (vocab.shortfall()) log << " (" << vocab.shortfall() << " fewer than requested)";
  log << "\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(10, vocab.size()); ++i)
    log << "  " << std::setw(2) << i + 1 << "  " << vocab.entries()[i].key.to_string() << "  " << vocab.entries()[i].count << "\n";
  return corpus.unreadable ? kExitInput : kExitOk;
}

// ---------------------------------------------------------------------------

struct ExtractOptions {
  Common common;
  std::string manifest;
  std::string vocab;
  std::string labels; ///< style labels; empty selects strength assembly
  std::string out;
};

inline EvaluationMatrix build_matrix(const AssembledSets& assembled, const PatternVocabulary& vocab, const FeatureConfig& cfg, unsigned jobs) {
  EvaluationMatrix m;
  m.target_names = assembled.target_names;
  m.segments = segment_layout(cfg);
  const auto evs = evaluate_sets(assembled.sets, vocab, cfg, jobs);
  for (std::size_t i = 0; i < evs.size(); ++i) m.rows.push_back({assembled.sets[i].set.player_id, assembled.sets[i].targets, evs[i].values});
  return m;
}

inline int extract(const ExtractOptions& o, std::ostream& log) {
  const FeatureConfig cfg = resolve_config(o.common);
  const PatternVocabulary vocab = load_vocabulary(o.vocab);
  if (vocab.requested() != cfg.pattern_length())
    throw InputError("vocabulary " + o.vocab + " has " + std::to_string(vocab.requested()) + " slots, preset expects " +
                     std::to_string(cfg.pattern_length()));
  const auto manifest = read_manifest(o.manifest);
  if (manifest.empty()) throw InputError("manifest " + o.manifest + " lists no games");
  const LoadedCorpus corpus = load_corpus(manifest, o.common.jobs, log);
  const AssembledSets assembled = assemble_sets(corpus, o.labels, o.common.seed, log);
  if (assembled.sets.empty()) throw InputError("no game sets could be assembled from " + o.manifest);

  const EvaluationMatrix m = build_matrix(assembled, vocab, cfg, o.common.jobs);
  std::ostringstream ss;
  write_matrix(ss, m);
  write_file_atomic(o.out, ss.str());
  write_run_manifest(o.out, "extract", o.common, {{"manifest", o.manifest}, {"vocab", o.vocab}, {"labels", o.labels}}, &cfg);
  log << "extracted " << m.rows.size() << " sets x " << m.dims() << " features (" << corpus.skipped << " games skipped, "
      << corpus.unreadable << " unreadable)\n";
  return corpus.unreadable || assembled.partial ? kExitInput : kExitOk;
}

// ---------------------------------------------------------------------------

inline std::string segment_display_name(const std::string& name) {
  static const std::map<std::string, std::string> names{{"patterns", "Patterns"},
                                                        {"sente_gote", "omega-local Seq."},
                                                        {"border", "Border Distance"},
                                                        {"captures", "Captured Stones"},
                                                        {"winloss", "Win/Loss"},
                                                        {"winloss_stat", "Win/Loss Statistic"},
                                                        {"winloss_points", "Win/Loss Points"}};
  auto it = names.find(name);
  return it == names.end() ? name : it->second;
}

/// Column ranges for segment names. Besides the stored segments,
/// winloss_stat (the four rates) and winloss_points (the two margins) split
/// the win/loss segment.
inline std::vector<ColumnRange> resolve_segments(const std::vector<Segment>& layout, const std::vector<std::string>& names) {
  std::vector<ColumnRange> out;
  for (const auto& n : names) {
    const std::string base = n == "winloss_stat" || n == "winloss_points" ? "winloss" : n;
    auto it = std::find_if(layout.begin(), layout.end(), [&](const Segment& s) { return s.name == base; });
    if (it == layout.end()) throw DomainError("unknown segment '" + n + "'");
    ColumnRange r{segment_display_name(n), it->offset, it->length};
    if (n == "winloss_stat") r.length = 4;
    if (n == "winloss_points") {
      r.offset += 4;
      r.length = 2;
    }
    if (r.length == 0) throw DomainError("segment '" + n + "' is empty");
    out.push_back(r);
  }
  return out;
}

inline std::vector<std::string> default_segments() { return {segment_names().begin(), segment_names().end()}; }

struct CrossvalOptions {
  Common common;
  std::string matrix;
  std::string model = "bagged-nn";
  bool ablate = false;
  std::vector<std::string> segments;
  std::string out;
  std::size_t folds = 10;
  std::size_t repeats = 5;
  bool group_aware = false;
  // Leak-free vocabulary mode rebuilds the pattern vocabulary inside every
  // fold, so it works from the corpus instead of a stored matrix.
  bool vocab_from_train = false;
  std::string corpus;
  std::string labels;
};

/// Fold provider that rebuilds the vocabulary from the training sets' games.
inline FoldProvider train_vocab_provider(const std::vector<LabeledSet>& sets, const FeatureConfig& cfg, std::size_t target, unsigned jobs) {
  return [&sets, cfg, target, jobs](std::span<const std::size_t> train, std::span<const std::size_t> test) {
    std::vector<std::shared_ptr<const AnnotatedGame>> games;
    std::set<const AnnotatedGame*> seen;
    for (std::size_t i : train)
      for (const auto& cg : sets[i].set.entries)
        if (seen.insert(cg.game.get()).second) games.push_back(cg.game);
    const PatternVocabulary vocab = build_vocabulary(games, cfg.pattern_length(), cfg.pattern_sizes);
    FoldData fd;
    auto eval = [&](std::span<const std::size_t> idx, std::vector<std::vector<double>>& xs, std::vector<double>& ys) {
      xs.resize(idx.size());
      parallel_for(idx.size(), jobs, [&](std::size_t k) { xs[k] = evaluate_set(sets[idx[k]].set, vocab, cfg).values; });
      for (std::size_t i : idx) ys.push_back(sets[i].targets.at(target));
    };
    eval(train, fd.train_x, fd.train_y);
    eval(test, fd.test_x, fd.test_y);
    return fd;
  };
}

inline int crossval(const CrossvalOptions& o, std::ostream& log) {
  ModelSpec spec = ModelSpec::named(o.model);
  spec.bagging.jobs = o.common.jobs;
  const CVOptions cv{o.folds, o.repeats, o.common.seed, o.group_aware};

  std::vector<std::string> target_names;
  std::vector<Segment> layout;
  std::vector<std::string> groups;
  std::size_t n = 0;
  std::vector<FoldProvider> providers; // one per target
  std::vector<LabeledDataset> datasets;
  std::vector<LabeledSet> sets;
  FeatureConfig cfg;
  bool partial = false;

  if (o.vocab_from_train) {
    if (o.corpus.empty()) throw InputError("--vocab-from-train needs --corpus (the manifest to extract from)");
    cfg = resolve_config(o.common);
    const LoadedCorpus corpus = load_corpus(read_manifest(o.corpus), o.common.jobs, log);
    AssembledSets assembled = assemble_sets(corpus, o.labels, o.common.seed, log);
    partial = corpus.unreadable || assembled.partial;
    sets = std::move(assembled.sets);
    target_names = assembled.target_names;
    layout = segment_layout(cfg);
    n = sets.size();
    for (const auto& s : sets) groups.push_back(s.set.player_id);
    for (std::size_t t = 0; t < target_names.size(); ++t) providers.push_back(train_vocab_provider(sets, cfg, t, o.common.jobs));
  } else {
    const EvaluationMatrix m = load_matrix(o.matrix);
    target_names = m.target_names;
    layout = m.segments;
    n = m.rows.size();
    for (const auto& r : m.rows) groups.push_back(r.player_id);
    datasets.resize(target_names.size());
    for (std::size_t t = 0; t < target_names.size(); ++t) {
      for (const auto& r : m.rows) {
        datasets[t].inputs.push_back(r.values);
        datasets[t].targets.push_back(r.targets[t]);
      }
      datasets[t].groups = groups;
    }
    for (const auto& d : datasets) providers.push_back(slice_provider(d));
  }

  const std::vector<ColumnRange> ranges = o.ablate ? resolve_segments(layout, o.segments.empty() ? default_segments() : o.segments)
                                                   : std::vector<ColumnRange>{};
  std::vector<AblationTable> tables;
  for (std::size_t t = 0; t < target_names.size(); ++t) {
    log << "cross-validating " << target_names[t] << " (" << n << " rows, " << spec.label() << ")\n";
    AblationTable table = feature_ablation(n, groups, providers[t], ranges, spec, cv);
    table.title = target_names[t];
    tables.push_back(std::move(table));
  }
  if (tables.size() > 1) tables.push_back(average_tables(tables, "average"));

  std::ostringstream text, tsv;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i) text << '\n';
    write_table(text, tables[i]);
    write_tsv(tsv, tables[i], i == 0);
  }
  write_file_atomic(o.out + ".txt", text.str());
  write_file_atomic(o.out + ".tsv", tsv.str());
  nlohmann::json opts{{"model", o.model},         {"ablate", o.ablate},     {"segments", o.segments},
                      {"folds", o.folds},         {"repeats", o.repeats},   {"group_aware", o.group_aware},
                      {"vocab_from_train", o.vocab_from_train}};
  write_run_manifest(o.out + ".txt", "crossval", o.common, {{"matrix", o.matrix}, {"corpus", o.corpus}, {"labels", o.labels}},
                     o.vocab_from_train ? &cfg : nullptr, opts);
  return partial ? kExitInput : kExitOk;
}

// ---------------------------------------------------------------------------

struct TrainOptions {
  Common common;
  std::string matrix;
  std::string out;
};

inline int train(const TrainOptions& o, std::ostream& log) {
  const EvaluationMatrix m = load_matrix(o.matrix);
  if (m.rows.empty()) throw InputError("matrix " + o.matrix + " has no rows");
  ModelBundle bundle;
  bundle.target_names = m.target_names;
  std::vector<std::vector<double>> xs;
  for (const auto& r : m.rows) xs.push_back(r.values);
  BaggingOptions bag;
  bag.jobs = o.common.jobs;
  for (std::size_t t = 0; t < m.target_names.size(); ++t) {
    std::vector<double> ys;
    for (const auto& r : m.rows) ys.push_back(r.targets[t]);
    bundle.models.push_back(train_bagged(xs, ys, derive_seed(o.common.seed, t), bag));
    log << "trained " << m.target_names[t] << " on " << xs.size() << " rows\n";
  }
  std::ostringstream ss;
  write_bundle(ss, bundle);
  write_file_atomic(o.out, ss.str());
  write_run_manifest(o.out, "train", o.common, {{"matrix", o.matrix}});
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct PredictOptions {
  Common common;
  std::string model;
  std::string vocab;
  std::vector<std::string> games;
  std::string player; ///< colour of interest = side with this PB/PW name
  std::string color;  ///< or a fixed colour, "B" / "W"
};

inline int predict(const PredictOptions& o, std::ostream& out, std::ostream& log) {
  const FeatureConfig cfg = resolve_config(o.common);
  const PatternVocabulary vocab = load_vocabulary(o.vocab);
  std::istringstream model_in(read_file(o.model));
  const ModelBundle bundle = read_bundle(model_in);
  if (o.player.empty() && o.color.empty()) throw InputError("predict needs --player or --color");

  ColoredGameSet set;
  set.player_id = o.player.empty() ? "?" : o.player;
  for (const auto& path : o.games) {
    try {
      GameRecord g = parse_sgf(read_file(path));
      Color c;
      if (!o.player.empty()) {
        if (g.black_name == o.player) c = Color::black;
        else if (g.white_name == o.player) c = Color::white;
        else {
          log << "skip " << path << ": player " << o.player << " not in game\n";
          continue;
        }
      } else {
        c = (o.color == "W" || o.color == "w" || o.color == "white") ? Color::white : Color::black;
      }
      if (g.moves.empty()) {
        log << "skip " << path << ": no moves\n";
        continue;
      }
      set.entries.push_back({std::make_shared<const AnnotatedGame>(annotate_game(std::move(g))), c});
    } catch (const std::exception& e) {
      log << "skip " << path << ": " << e.what() << "\n";
    }
  }
  if (set.entries.empty()) throw InputError("no parseable games to predict from");

  const EvaluationVector ev = evaluate_set(set, vocab, cfg);
  out << "games\t" << set.size() << "\n";
  for (const auto& seg : ev.segments) {
    double sum = 0.0;
    for (double v : ev.view(seg.name)) sum += v;
    out << "segment\t" << seg.name << "\tlength=" << seg.length << "\tsum=" << fixed(sum, 4) << "\n";
  }
  bool clamped = false;
  for (std::size_t t = 0; t < bundle.models.size(); ++t) {
    if (bundle.models[t].scaler.dims() != ev.values.size())
      throw InputError("model expects " + std::to_string(bundle.models[t].scaler.dims()) + " features, evaluation has " +
                       std::to_string(ev.values.size()));
    const double y = goeval::predict(bundle.models[t], ev.values, &clamped);
    out << "predict\t" << bundle.target_names[t] << "\t" << fixed(y, 3) << "\n";
  }
  if (clamped) out << "note\tsome features fell outside the training range and were clamped\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SynthOptions {
  Common common;
  std::string profile = "planted"; ///< builtin name or path to a profile file
  std::size_t players = 100;
  std::size_t games = 12;
  std::string out_dir;
};

inline SynthProfile load_profile(const std::string& spec) {
  if (spec == "planted" || spec == "null") return SynthProfile::named(spec);
  if (!fs::exists(spec)) throw InputError("unknown profile '" + spec + "' (not a builtin and no such file)");
  try {
    return SynthProfile::parse(read_file(spec));
  } catch (const DomainError& e) {
    throw InputError(std::string("invalid profile: ") + e.what());
  }
}

inline int synth(const SynthOptions& o, std::ostream& log) {
  const SynthProfile prof = load_profile(o.profile);
  const SynthCorpus corpus = synth_corpus(prof, o.players, o.games, o.common.seed);
  const fs::path dir(o.out_dir);
  std::string manifest = "# synthetic corpus, profile " + prof.name + ", seed " + std::to_string(o.common.seed) + "\n";
  for (const auto& g : corpus.games) {
    write_file_atomic(dir / "games" / g.file_name, serialize_sgf(g.game));
    manifest += "games/" + g.file_name + "\t" + g.player_id + "\n";
  }
  std::string labels;
  for (const auto& [id, y] : corpus.labels) labels += id + "\t" + detail::format_double(y) + "\n";
  write_file_atomic(dir / "manifest.tsv", manifest);
  write_file_atomic(dir / "labels.tsv", labels);
  write_run_manifest(dir / "manifest.tsv", "synth", o.common, nlohmann::json::object(), nullptr,
                     {{"profile", o.profile}, {"players", o.players}, {"games_per_player", o.games}});
  log << "wrote " << corpus.games.size() << " games for " << corpus.labels.size() << " players to " << dir.string() << "\n";
  return kExitOk;
}

} // namespace goeval::cmd

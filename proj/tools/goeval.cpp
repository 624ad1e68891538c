#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "goeval/commands.hpp"

namespace {

void add_common(CLI::App* sub, goeval::cmd::Common& c, bool with_config = true) {
  sub->add_option("--seed", c.seed, "Random seed (64-bit)");
  sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  if (with_config) {
    sub->add_option("--preset", c.preset, "Feature preset")->check(CLI::IsMember({"STRENGTH", "STYLE", "strength", "style"}));
    sub->add_option("--config", c.config_path, "Feature configuration file (key = value)")->check(CLI::ExistingFile);
  }
}

} // namespace

int main(int argc, char** argv) {
  namespace cmd = goeval::cmd;
  CLI::App app{"goeval: evaluate Go game records and predict player attributes"};
  app.require_subcommand(1);

  cmd::BuildVocabOptions vocab;
  auto* s_vocab = app.add_subcommand("build-vocab", "Build the pattern vocabulary from a corpus");
  add_common(s_vocab, vocab.common);
  s_vocab->add_option("manifest", vocab.manifest, "Corpus manifest")->required();
  s_vocab->add_option("-o,--out", vocab.out, "Vocabulary output file")->required();

  cmd::ExtractOptions ext;
  auto* s_ext = app.add_subcommand("extract", "Assemble game sets and write the evaluation matrix");
  add_common(s_ext, ext.common);
  s_ext->add_option("manifest", ext.manifest, "Corpus manifest")->required();
  s_ext->add_option("--vocab", ext.vocab, "Vocabulary file")->required();
  s_ext->add_option("--labels", ext.labels, "Style labels (player id + 4 scores); omit for strength");
  s_ext->add_option("-o,--out", ext.out, "Matrix output file")->required();

  cmd::CrossvalOptions cv;
  auto* s_cv = app.add_subcommand("crossval", "Repeated 10-fold cross-validation with RMSE report");
  add_common(s_cv, cv.common);
  s_cv->add_option("matrix", cv.matrix, "Evaluation matrix");
  s_cv->add_option("--model", cv.model, "mean or bagged-nn");
  s_cv->add_flag("--ablate", cv.ablate, "One row per feature segment");
  s_cv->add_option("--segments", cv.segments, "Segments to ablate")->delimiter(',');
  s_cv->add_option("--folds", cv.folds, "Folds per repeat");
  s_cv->add_option("--repeats", cv.repeats, "Repeats");
  s_cv->add_flag("--group-aware", cv.group_aware, "Keep rows of one player in one fold");
  s_cv->add_flag("--vocab-from-train", cv.vocab_from_train, "Rebuild the vocabulary from training folds (needs --corpus)");
  s_cv->add_option("--corpus", cv.corpus, "Corpus manifest for --vocab-from-train");
  s_cv->add_option("--labels", cv.labels, "Style labels for --vocab-from-train");
  s_cv->add_option("-o,--out", cv.out, "Report prefix (.txt and .tsv)")->required();

  cmd::TrainOptions tr;
  auto* s_tr = app.add_subcommand("train", "Train bagged networks on a whole matrix");
  add_common(s_tr, tr.common, false);
  s_tr->add_option("matrix", tr.matrix, "Evaluation matrix")->required();
  s_tr->add_option("-o,--out", tr.out, "Model output file")->required();

  cmd::PredictOptions pr;
  auto* s_pr = app.add_subcommand("predict", "Predict attributes of a player from their games");
  add_common(s_pr, pr.common);
  s_pr->add_option("--model", pr.model, "Model file from `train`")->required();
  s_pr->add_option("--vocab", pr.vocab, "Vocabulary file")->required();
  s_pr->add_option("--player", pr.player, "Player name (PB/PW) whose games these are");
  s_pr->add_option("--color", pr.color, "Colour of interest when no player name is given (B/W)");
  s_pr->add_option("games", pr.games, "SGF files")->required();

  cmd::SynthOptions sy;
  auto* s_sy = app.add_subcommand("synth", "Generate a synthetic labelled corpus");
  add_common(s_sy, sy.common, false);
  s_sy->add_option("--profile", sy.profile, "planted, null, or a profile file");
  s_sy->add_option("--players", sy.players, "Number of players");
  s_sy->add_option("--games", sy.games, "Games per player");
  s_sy->add_option("-o,--out", sy.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cmd::kExitInput;
  }

  try {
    if (*s_vocab) return cmd::build_vocab(vocab, std::cerr);
    if (*s_ext) return cmd::extract(ext, std::cerr);
    if (*s_cv) {
      if (cv.matrix.empty() && !cv.vocab_from_train) throw goeval::InputError("crossval needs a matrix (or --vocab-from-train --corpus)");
      if (cv.model != "mean" && cv.model != "bagged-nn" && cv.model != "bagged") {
        std::cerr << "error: unknown model '" << cv.model << "' (expected mean or bagged-nn)\n";
        return cmd::kExitInput;
      }
      return cmd::crossval(cv, std::cerr);
    }
    if (*s_tr) return cmd::train(tr, std::cerr);
    if (*s_pr) return cmd::predict(pr, std::cout, std::cerr);
    if (*s_sy) return cmd::synth(sy, std::cerr);
  } catch (const goeval::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cmd::kExitInput;
  } catch (const goeval::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cmd::kExitInput;
  } catch (const goeval::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cmd::kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return cmd::kExitInternal;
  }
  return cmd::kExitInternal;
}

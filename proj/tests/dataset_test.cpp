#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "goeval/goeval.hpp"

using namespace goeval;

namespace {

std::shared_ptr<const AnnotatedGame> tiny_game(const std::string& black, const std::string& white, const std::string& br,
                                               const std::string& wr, int size = 19, int handicap = 0) {
  GameRecord g;
  g.board_size = size;
  g.handicap = handicap;
  g.black_name = black;
  g.white_name = white;
  g.black_rank = parse_rank(br);
  g.white_rank = parse_rank(wr);
  g.moves = {{Color::black, Point{4, 4}}, {Color::white, Point{3, 3}}};
  return std::make_shared<const AnnotatedGame>(annotate_game(g));
}

std::vector<CorpusEntry> player_games(const std::string& name, const std::string& rank, int n) {
  std::vector<CorpusEntry> out;
  for (int i = 0; i < n; ++i) {
    const bool black = i % 2 == 0;
    const std::string opp = "opp" + std::to_string(i);
    out.push_back({black ? tiny_game(name, opp, rank, "") : tiny_game(opp, name, "", rank), "", std::nullopt});
  }
  return out;
}

} // namespace

TEST(StrengthSets, SmallGroupDropped) {
  const auto corpus = player_games("alice", "3k", 9);
  EXPECT_TRUE(assemble_strength_sets(corpus, 1).empty());
}

TEST(StrengthSets, MidGroupKeptWhole) {
  const auto corpus = player_games("alice", "3k", 37);
  const auto sets = assemble_strength_sets(corpus, 1);
  ASSERT_EQ(sets.size(), 1u);
  EXPECT_EQ(sets[0].set.size(), 37u);
  EXPECT_EQ(sets[0].targets, std::vector<double>{3.0});
  for (std::size_t i = 0; i < 37; ++i) EXPECT_EQ(sets[0].set.entries[i].color, i % 2 == 0 ? Color::black : Color::white);
}

TEST(StrengthSets, GroupsSplitByRank) {
  auto corpus = player_games("alice", "3k", 12);
  auto later = player_games("alice", "1d", 10);
  corpus.insert(corpus.end(), later.begin(), later.end());
  const auto sets = assemble_strength_sets(corpus, 1);
  ASSERT_EQ(sets.size(), 2u);
  std::set<double> targets{sets[0].targets[0], sets[1].targets[0]};
  EXPECT_EQ(targets, (std::set<double>{0.0, 3.0}));
}

TEST(StrengthSets, IneligibleGamesExcluded) {
  std::vector<CorpusEntry> corpus;
  for (int i = 0; i < 12; ++i) {
    corpus.push_back({tiny_game("bob", "x", "5k", "", 13), "", std::nullopt}); // small board
    corpus.push_back({tiny_game("carl", "x", "5k", "", 19, 3), "", std::nullopt}); // handicap
    corpus.push_back({tiny_game("dave", "x", "5k?", ""), "", std::nullopt});      // unparseable rank
    corpus.push_back({tiny_game("erin", "x", "25k", ""), "", std::nullopt});      // outside -5..20
    corpus.push_back({tiny_game("fay", "x", "7d", ""), "", std::nullopt});        // outside -5..20
  }
  EXPECT_TRUE(assemble_strength_sets(corpus, 1).empty());
}

TEST(StrengthSets, RankOverrideAndPlayerFilter) {
  std::vector<CorpusEntry> corpus;
  for (int i = 0; i < 10; ++i) corpus.push_back({tiny_game("gus", "hal", "", "", 19), "gus", Rank{2, Rank::Class::dan}});
  const auto sets = assemble_strength_sets(corpus, 1);
  ASSERT_EQ(sets.size(), 1u);
  EXPECT_EQ(sets[0].targets, std::vector<double>{-1.0});
  EXPECT_EQ(sets[0].set.player_id, "gus@2d");
}

TEST(StrengthSets, SubsampleSizeUniform) {
  // k must be uniform on 10..50: chi-square against 41 equiprobable cells
  constexpr int kSeeds = 10000;
  std::vector<int> counts(41, 0);
  for (std::uint64_t s = 0; s < kSeeds; ++s) {
    Rng rng(derive_seed(12345, s));
    const auto idx = subsample_group(200, rng);
    ASSERT_GE(idx.size(), 10u);
    ASSERT_LE(idx.size(), 50u);
    ASSERT_TRUE(std::is_sorted(idx.begin(), idx.end()));
    ASSERT_EQ(std::set<std::size_t>(idx.begin(), idx.end()).size(), idx.size());
    ++counts[idx.size() - 10];
  }
  const double expected = kSeeds / 41.0;
  double chi2 = 0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 40 degrees of freedom; the 0.999 quantile is 73.4
  EXPECT_LT(chi2, 73.4);
}

TEST(StrengthSets, LargeGroupSubsampledThroughAssembly) {
  const auto corpus = player_games("ivy", "10k", 200);
  std::set<std::size_t> sizes;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto sets = assemble_strength_sets(corpus, seed);
    ASSERT_EQ(sets.size(), 1u);
    EXPECT_GE(sets[0].set.size(), 10u);
    EXPECT_LE(sets[0].set.size(), 50u);
    sizes.insert(sets[0].set.size());
  }
  EXPECT_GT(sizes.size(), 5u);
}

TEST(StrengthSets, EmptyCorpus) { EXPECT_TRUE(assemble_strength_sets({}, 3).empty()); }

namespace {
std::vector<ColoredGame> style_games(std::size_t n) {
  std::vector<ColoredGame> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({tiny_game("pro", "x" + std::to_string(i), "", ""), i % 3 ? Color::black : Color::white});
  return out;
}
} // namespace

TEST(StyleSets, TwelveDisjointSetsOfSixteen) {
  const auto games = style_games(192);
  const auto sets = assemble_style_sets(games, {3, 4, 5, 6}, "pro", 7);
  ASSERT_EQ(sets.size(), 12u);
  std::set<const AnnotatedGame*> seen;
  for (const auto& s : sets) {
    EXPECT_EQ(s.set.size(), 16u);
    EXPECT_EQ(s.targets, (std::vector<double>{3, 4, 5, 6}));
    for (const auto& e : s.set.entries) EXPECT_TRUE(seen.insert(e.game.get()).second);
  }
  EXPECT_EQ(seen.size(), 192u);
  for (const auto& g : games) EXPECT_TRUE(seen.count(g.game.get()));
}

TEST(StyleSets, WrongCountIsError) {
  EXPECT_THROW(assemble_style_sets(style_games(191), {3, 4, 5, 6}, "pro", 7), DomainError);
  EXPECT_THROW(assemble_style_sets(style_games(192), {0.5, 4, 5, 6}, "pro", 7), DomainError);
}

TEST(StyleSets, DeterministicPartition) {
  const auto games = style_games(192);
  const auto a = assemble_style_sets(games, {3, 4, 5, 6}, "pro", 7);
  const auto b = assemble_style_sets(games, {3, 4, 5, 6}, "pro", 7);
  const auto c = assemble_style_sets(games, {3, 4, 5, 6}, "pro", 8);
  bool differs = false;
  for (std::size_t s = 0; s < 12; ++s)
    for (std::size_t j = 0; j < 16; ++j) {
      EXPECT_EQ(a[s].set.entries[j].game, b[s].set.entries[j].game);
      differs |= a[s].set.entries[j].game != c[s].set.entries[j].game;
    }
  EXPECT_TRUE(differs);
}

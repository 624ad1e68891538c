#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "goeval/goeval.hpp"

using namespace goeval;

namespace {

struct Data {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
};

Data noisy_linear(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row{rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1)};
    d.y.push_back(3 * row[0] - row[1] + 0.1 * rng.uniform(-1, 1));
    d.x.push_back(std::move(row));
  }
  return d;
}

BaggingOptions small_bag(std::size_t members = 5) {
  BaggingOptions o;
  o.members = members;
  return o;
}

} // namespace

TEST(Bagging, MembersDiffer) {
  const Data d = noisy_linear(30, 1);
  const BaggedModel m = train_bagged(d.x, d.y, 9);
  ASSERT_EQ(m.members.size(), kBagSize);
  for (std::size_t i = 1; i < m.members.size(); ++i) EXPECT_NE(m.members[i].weights, m.members[0].weights);
  const std::vector<double> probe{0.5, 0.5, 0.5};
  const auto outs = member_outputs(m, probe);
  const double mean = std::accumulate(outs.begin(), outs.end(), 0.0) / static_cast<double>(outs.size());
  double var = 0;
  for (double o : outs) var += (o - mean) * (o - mean);
  EXPECT_GT(var, 0.0);
}

TEST(Bagging, SingleRowPredictsItsTarget) {
  const std::vector<std::vector<double>> x{{1, 2}};
  const std::vector<double> y{4.5};
  const BaggedModel m = train_bagged(x, y, 2, small_bag());
  EXPECT_DOUBLE_EQ(predict(m, x[0]), 4.5);
  EXPECT_DOUBLE_EQ(predict(m, std::vector<double>{7, -1}), 4.5);
}

TEST(Bagging, ConstantTarget) {
  const Data d = noisy_linear(20, 2);
  const std::vector<double> y(20, -2.0);
  const BaggedModel m = train_bagged(d.x, y, 3, small_bag());
  for (const auto& row : d.x) EXPECT_DOUBLE_EQ(predict(m, row), -2.0);
}

TEST(Bagging, PredictionIsMemberMean) {
  const Data d = noisy_linear(25, 3);
  BaggedModel m = train_bagged(d.x, d.y, 4, small_bag(6));
  const std::vector<double> probe{0.2, 0.9, 0.4};
  const auto outs = member_outputs(m, probe);
  const double mean = std::accumulate(outs.begin(), outs.end(), 0.0) / static_cast<double>(outs.size());
  EXPECT_NEAR(predict(m, probe), m.scaler.unscale_target(mean), 1e-12);
  // member order does not matter
  const double before = predict(m, probe);
  std::reverse(m.members.begin(), m.members.end());
  EXPECT_NEAR(predict(m, probe), before, 1e-12);
}

TEST(Bagging, ZeroOutputIsRangeMidpoint) {
  const Data d = noisy_linear(10, 4);
  BaggedModel m = train_bagged(d.x, d.y, 5, small_bag(3));
  for (auto& net : m.members) std::fill(net.weights.begin(), net.weights.end(), 0.0);
  EXPECT_NEAR(predict(m, d.x[0]), (m.scaler.target_min + m.scaler.target_max) / 2, 1e-12);
}

TEST(Bagging, DimensionMismatch) {
  const Data d = noisy_linear(10, 4);
  const BaggedModel m = train_bagged(d.x, d.y, 5, small_bag(2));
  EXPECT_THROW(predict(m, std::vector<double>{1, 2}), DomainError);
}

TEST(Bagging, ParallelMatchesSerial) {
  const Data d = noisy_linear(20, 6);
  BaggingOptions par = small_bag(6);
  par.jobs = 3;
  EXPECT_EQ(train_bagged(d.x, d.y, 7, small_bag(6)), train_bagged(d.x, d.y, 7, par));
}

TEST(Bagging, PersistenceReproducesPredictions) {
  const Data d = noisy_linear(25, 7);
  const BaggedModel m = train_bagged(d.x, d.y, 8, small_bag(4));
  std::stringstream ss;
  write_model(ss, m);
  const BaggedModel back = read_model(ss);
  EXPECT_EQ(back, m);
  const Data probe = noisy_linear(20, 70);
  for (const auto& row : probe.x) {
    const double a = predict(m, row), b = predict(back, row);
    EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST(Bagging, BundleRoundTrip) {
  const Data d = noisy_linear(15, 8);
  ModelBundle b;
  b.target_names = {"territoriality", "orthodoxity"};
  b.models = {train_bagged(d.x, d.y, 1, small_bag(2)), train_bagged(d.x, d.y, 2, small_bag(2))};
  b.feature_config = FeatureConfig::style().to_text();
  std::stringstream ss;
  write_bundle(ss, b);
  const ModelBundle back = read_bundle(ss);
  EXPECT_EQ(back.target_names, b.target_names);
  EXPECT_EQ(back.feature_config, b.feature_config);
  ASSERT_EQ(back.models.size(), 2u);
  EXPECT_EQ(back.models[1], b.models[1]);
  std::stringstream bad("#goeval-model v2\n");
  EXPECT_THROW(read_bundle(bad), InputError);
}

TEST(Bagging, AffineTargetRescalingKeepsRanking) {
  const Data d = noisy_linear(30, 9);
  std::vector<double> y2;
  for (double v : d.y) y2.push_back(5 * v + 11);
  const BaggedModel a = train_bagged(d.x, d.y, 10, small_bag(4));
  const BaggedModel b = train_bagged(d.x, y2, 10, small_bag(4));
  const Data probe = noisy_linear(15, 90);
  std::vector<double> pa, pb;
  for (const auto& row : probe.x) {
    pa.push_back(predict(a, row));
    pb.push_back(predict(b, row));
  }
  auto order = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return v[i] < v[j]; });
    return idx;
  };
  EXPECT_EQ(order(pa), order(pb));
}

TEST(MeanRegressor, Examples) {
  EXPECT_DOUBLE_EQ(train_mean(std::vector<double>{1, 2, 3}).predict(std::vector<double>{9, 9}), 2.0);
  EXPECT_DOUBLE_EQ(train_mean(std::vector<double>{7}).predict(), 7.0);
  std::vector<double> ranks;
  for (int r = -5; r <= 20; ++r) ranks.push_back(r);
  EXPECT_DOUBLE_EQ(train_mean(ranks).predict(), 7.5);
  EXPECT_THROW(train_mean(std::vector<double>{}), DomainError);
}

#include <gtest/gtest.h>

#include <cmath>

#include "goeval/goeval.hpp"

using namespace goeval;

TEST(Scaler, Examples) {
  const std::vector<std::vector<double>> x{{0, 4}, {10, 4}};
  const std::vector<double> y{1, 3};
  const ScalerParams s = fit_scaler(x, y);
  EXPECT_EQ(s.scale_input(std::vector<double>{5, 4}), (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(s.scale_input(std::vector<double>{5, 100})[1], 0.0);
  bool clamped = false;
  EXPECT_EQ(s.scale_input(std::vector<double>{12, 4}, &clamped)[0], 1.0);
  EXPECT_TRUE(clamped);
  clamped = false;
  s.scale_input(std::vector<double>{3, 4}, &clamped);
  EXPECT_FALSE(clamped);
  EXPECT_THROW(s.scale_input(std::vector<double>{1}), DomainError);
  EXPECT_THROW(fit_scaler({}, {}), DomainError);
}

TEST(Scaler, TargetRoundTrip) {
  const std::vector<std::vector<double>> x{{0}, {1}};
  const std::vector<double> y{-5, 20};
  const ScalerParams s = fit_scaler(x, y);
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double t = rng.uniform(-5, 20);
    EXPECT_NEAR(s.unscale_target(s.scale_target(t)), t, 1e-12);
  }
  EXPECT_DOUBLE_EQ(s.unscale_target(0.0), 7.5);
}

namespace {

double relative_error(double a, double b) { return std::abs(a - b) / std::max({1e-8, std::abs(a), std::abs(b)}); }

} // namespace

TEST(Network, GradientMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const NetworkParams net = NetworkParams::random(5, rng, 0.5);
    std::vector<std::vector<double>> x(8, std::vector<double>(5));
    std::vector<double> y(8);
    for (auto& row : x)
      for (double& v : row) v = rng.uniform(-1, 1);
    for (double& v : y) v = rng.uniform(-1, 1);
    std::vector<double> grad;
    mse_and_gradient(net, x, y, grad);
    std::vector<double> scratch;
    for (std::size_t i = 0; i < net.weight_count(); ++i) {
      const double h = 1e-5;
      NetworkParams a = net, b = net;
      a.weights[i] += h;
      b.weights[i] -= h;
      const double fd = (mse_and_gradient(a, x, y, scratch) - mse_and_gradient(b, x, y, scratch)) / (2 * h);
      if (std::abs(fd) < 1e-7 && std::abs(grad[i]) < 1e-7) continue;
      ASSERT_LT(relative_error(grad[i], fd), 1e-4) << "seed " << seed << " weight " << i;
    }
  }
}

TEST(Network, LearnsXor) {
  const std::vector<std::vector<double>> x{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  const std::vector<double> y{-1, 1, 1, -1};
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    ok += train_network(x, y, rng).mse < 0.01;
  }
  EXPECT_GE(ok, 18);
}

TEST(Network, ConstantTarget) {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  Rng data(3);
  for (int i = 0; i < 20; ++i) {
    x.push_back({data.uniform(-1, 1), data.uniform(-1, 1), data.uniform(-1, 1)});
    y.push_back(0.3);
  }
  Rng rng(8);
  const TrainResult r = train_network(x, y, rng);
  EXPECT_LT(r.mse, 0.001);
  for (const auto& row : x) EXPECT_NEAR(forward(r.net, row), 0.3, 0.05);
}

TEST(Network, Deterministic) {
  const std::vector<std::vector<double>> x{{-1, 0.5}, {0.2, 1}, {1, -0.3}};
  const std::vector<double> y{0.1, -0.4, 0.9};
  Rng a(77), b(77);
  EXPECT_EQ(train_network(x, y, a).net, train_network(x, y, b).net);
}

TEST(Network, RejectsNonFinite) {
  const std::vector<std::vector<double>> x{{NAN, 0}};
  const std::vector<double> y{0};
  Rng rng(1);
  EXPECT_THROW(train_network(x, y, rng), DomainError);
}

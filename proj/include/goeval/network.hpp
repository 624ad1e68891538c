#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "goeval/error.hpp"
#include "goeval/rng.hpp"

namespace goeval {

constexpr std::size_t kHiddenUnits = 20;

/// One-hidden-layer network with tanh at the hidden and output units.
///
/// Weights are stored flat: the hidden layer first, one row of (inputs + 1)
/// per hidden unit with the bias last, then the output row of (hidden + 1).
struct NetworkParams {
  std::size_t inputs = 0;
  std::size_t hidden = kHiddenUnits;
  std::vector<double> weights;

  std::size_t hidden_stride() const noexcept { return inputs + 1; }
  std::size_t output_offset() const noexcept { return hidden * hidden_stride(); }
  std::size_t weight_count() const noexcept { return output_offset() + hidden + 1; }

  static NetworkParams random(std::size_t inputs, Rng& rng, double range = 0.5, std::size_t hidden = kHiddenUnits) {
    NetworkParams p{inputs, hidden, {}};
    p.weights.resize(p.weight_count());
    for (double& w : p.weights) w = rng.uniform(-range, range);
    return p;
  }

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;
};

inline double forward(const NetworkParams& net, std::span<const double> x, std::vector<double>* hidden_out = nullptr) {
  const double* w = net.weights.data();
  const double* out_row = w + net.output_offset();
  double z = out_row[net.hidden];
  if (hidden_out) hidden_out->resize(net.hidden);
  for (std::size_t j = 0; j < net.hidden; ++j) {
    const double* row = w + j * net.hidden_stride();
    double a = row[net.inputs];
    for (std::size_t i = 0; i < net.inputs; ++i) a += row[i] * x[i];
    const double h = std::tanh(a);
    if (hidden_out) (*hidden_out)[j] = h;
    z += out_row[j] * h;
  }
  return std::tanh(z);
}

/// Mean squared error over the batch and its gradient w.r.t. every weight.
inline double mse_and_gradient(const NetworkParams& net, std::span<const std::vector<double>> inputs, std::span<const double> targets,
                               std::vector<double>& grad) {
  grad.assign(net.weight_count(), 0.0);
  const double* out_row = net.weights.data() + net.output_offset();
  double* g_out = grad.data() + net.output_offset();
  const double scale = 2.0 / static_cast<double>(inputs.size());
  std::vector<double> h;
  double sse = 0.0;
  for (std::size_t r = 0; r < inputs.size(); ++r) {
    const auto& x = inputs[r];
    const double o = forward(net, x, &h);
    const double err = o - targets[r];
    sse += err * err;
    const double dz = scale * err * (1.0 - o * o);
    for (std::size_t j = 0; j < net.hidden; ++j) {
      g_out[j] += dz * h[j];
      const double da = dz * out_row[j] * (1.0 - h[j] * h[j]);
      if (da == 0.0) continue;
      double* g_row = grad.data() + j * net.hidden_stride();
      for (std::size_t i = 0; i < net.inputs; ++i) g_row[i] += da * x[i];
      g_row[net.inputs] += da;
    }
    g_out[net.hidden] += dz;
  }
  return sse / static_cast<double>(inputs.size());
}

struct RpropOptions {
  std::size_t max_epochs = 100;
  double target_mse = 0.001;
  double increase = 1.2;
  double decrease = 0.5;
  double initial_step = 0.1;
  double min_step = 1e-6;
  double max_step = 50.0;
  double init_range = 0.5;
};

struct TrainResult {
  NetworkParams net;
  std::vector<double> steps; ///< final per-weight step sizes
  std::size_t epochs = 0;
  double mse = 0.0;          ///< training error when training stopped
};

/// Full-batch RPROP with weight backtracking. Stops after max_epochs
/// gradient evaluations or once the training MSE drops below target_mse.
inline TrainResult train_network(std::span<const std::vector<double>> inputs, std::span<const double> targets, Rng& rng,
                                 const RpropOptions& opt = {}) {
  if (inputs.empty() || inputs.size() != targets.size()) throw DomainError("training needs a nonempty set with one target per row");
  const std::size_t dims = inputs.front().size();
  for (std::size_t r = 0; r < inputs.size(); ++r) {
    if (inputs[r].size() != dims) throw DomainError("training rows differ in length");
    if (!std::isfinite(targets[r])) throw DomainError("non-finite training target");
    for (double v : inputs[r])
      if (!std::isfinite(v)) throw DomainError("non-finite training input");
  }

  TrainResult res;
  res.net = NetworkParams::random(dims, rng, opt.init_range);
  const std::size_t nw = res.net.weight_count();
  res.steps.assign(nw, opt.initial_step);
  std::vector<double> prev_grad(nw, 0.0), prev_delta(nw, 0.0), grad;

  for (res.epochs = 0; res.epochs < opt.max_epochs; ++res.epochs) {
    res.mse = mse_and_gradient(res.net, inputs, targets, grad);
    if (res.mse < opt.target_mse) break;
    for (std::size_t k = 0; k < nw; ++k) {
      double& w = res.net.weights[k];
      const double sign = grad[k] * prev_grad[k];
      if (sign > 0.0) {
        res.steps[k] = std::min(res.steps[k] * opt.increase, opt.max_step);
        prev_delta[k] = grad[k] > 0.0 ? -res.steps[k] : res.steps[k];
        w += prev_delta[k];
        prev_grad[k] = grad[k];
      } else if (sign < 0.0) {
        res.steps[k] = std::max(res.steps[k] * opt.decrease, opt.min_step);
        w -= prev_delta[k];
        prev_delta[k] = 0.0;
        prev_grad[k] = 0.0;
      } else {
        prev_delta[k] = grad[k] > 0.0 ? -res.steps[k] : (grad[k] < 0.0 ? res.steps[k] : 0.0);
        w += prev_delta[k];
        prev_grad[k] = grad[k];
      }
    }
  }
  if (res.epochs == opt.max_epochs) {
    std::vector<double> unused;
    res.mse = mse_and_gradient(res.net, inputs, targets, unused);
  }
  return res;
}

} // namespace goeval

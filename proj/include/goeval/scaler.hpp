#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "goeval/error.hpp"

namespace goeval {

/// Per-dimension linear map of the training range onto [-1, 1].
struct ScalerParams {
  std::vector<double> input_min;
  std::vector<double> input_max;
  double target_min = 0.0;
  double target_max = 0.0;

  std::size_t dims() const noexcept { return input_min.size(); }
  bool constant_input(std::size_t i) const { return input_max[i] == input_min[i]; }
  bool constant_target() const noexcept { return target_max == target_min; }

  /// Scales x into [-1, 1]; values outside the training range are clamped
  /// and reported through `clamped`.
  std::vector<double> scale_input(std::span<const double> x, bool* clamped = nullptr) const {
    if (x.size() != dims()) throw DomainError("input has " + std::to_string(x.size()) + " components, model expects " + std::to_string(dims()));
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (constant_input(i)) {
        out[i] = 0.0;
        continue;
      }
      const double s = 2.0 * (x[i] - input_min[i]) / (input_max[i] - input_min[i]) - 1.0;
      if (clamped && (s < -1.0 || s > 1.0)) *clamped = true;
      out[i] = std::clamp(s, -1.0, 1.0);
    }
    return out;
  }

  double scale_target(double y) const {
    if (constant_target()) return 0.0;
    return std::clamp(2.0 * (y - target_min) / (target_max - target_min) - 1.0, -1.0, 1.0);
  }

  double unscale_target(double s) const {
    if (constant_target()) return target_min;
    return target_min + (s + 1.0) * 0.5 * (target_max - target_min);
  }
};

/// Fits ranges on training data only.
inline ScalerParams fit_scaler(std::span<const std::vector<double>> inputs, std::span<const double> targets) {
  if (inputs.empty() || inputs.size() != targets.size()) throw DomainError("scaler needs a nonempty training set with one target per row");
  ScalerParams p;
  p.input_min = inputs.front();
  p.input_max = inputs.front();
  for (const auto& row : inputs) {
    if (row.size() != p.dims()) throw DomainError("training rows differ in length");
    for (std::size_t i = 0; i < row.size(); ++i) {
      p.input_min[i] = std::min(p.input_min[i], row[i]);
      p.input_max[i] = std::max(p.input_max[i], row[i]);
    }
  }
  const auto [lo, hi] = std::minmax_element(targets.begin(), targets.end());
  p.target_min = *lo;
  p.target_max = *hi;
  return p;
}

} // namespace goeval

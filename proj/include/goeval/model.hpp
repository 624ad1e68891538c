#pragma once

#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "goeval/error.hpp"
#include "goeval/network.hpp"
#include "goeval/parallel.hpp"
#include "goeval/rng.hpp"
#include "goeval/scaler.hpp"
#include "goeval/sgf.hpp"

namespace goeval {

constexpr std::size_t kBagSize = 20;

struct BaggedModel {
  ScalerParams scaler;
  std::vector<NetworkParams> members;
  std::uint64_t seed = 0;

  friend bool operator==(const BaggedModel& a, const BaggedModel& b) {
    return a.members == b.members && a.seed == b.seed && a.scaler.input_min == b.scaler.input_min &&
           a.scaler.input_max == b.scaler.input_max && a.scaler.target_min == b.scaler.target_min &&
           a.scaler.target_max == b.scaler.target_max;
  }
};

struct BaggingOptions {
  std::size_t members = kBagSize;
  RpropOptions rprop{};
  unsigned jobs = 1;
};

/// Fits the scaler on the whole training set, then trains each member on its
/// own bootstrap resample (same size, with replacement).
inline BaggedModel train_bagged(std::span<const std::vector<double>> inputs, std::span<const double> targets, std::uint64_t seed,
                                const BaggingOptions& opt = {}) {
  if (inputs.empty() || inputs.size() != targets.size()) throw DomainError("bagged training needs a nonempty set with one target per row");
  BaggedModel model;
  model.seed = seed;
  model.scaler = fit_scaler(inputs, targets);

  std::vector<std::vector<double>> scaled_x;
  std::vector<double> scaled_y;
  scaled_x.reserve(inputs.size());
  for (std::size_t r = 0; r < inputs.size(); ++r) {
    scaled_x.push_back(model.scaler.scale_input(inputs[r]));
    scaled_y.push_back(model.scaler.scale_target(targets[r]));
  }

  model.members.resize(opt.members);
  parallel_for(opt.members, opt.jobs, [&](std::size_t m) {
    Rng rng(derive_seed(seed, m));
    std::vector<std::vector<double>> bx;
    std::vector<double> by;
    bx.reserve(scaled_x.size());
    by.reserve(scaled_x.size());
    for (std::size_t i = 0; i < scaled_x.size(); ++i) {
      const std::size_t pick = rng.index(scaled_x.size());
      bx.push_back(scaled_x[pick]);
      by.push_back(scaled_y[pick]);
    }
    model.members[m] = train_network(bx, by, rng, opt.rprop).net;
  });
  return model;
}

/// Member outputs in scaled target space.
inline std::vector<double> member_outputs(const BaggedModel& model, std::span<const double> x, bool* clamped = nullptr) {
  const std::vector<double> s = model.scaler.scale_input(x, clamped);
  std::vector<double> out;
  out.reserve(model.members.size());
  for (const auto& net : model.members) out.push_back(forward(net, s));
  return out;
}

/// Averages the members in scaled space and maps back to the target range.
inline double predict(const BaggedModel& model, std::span<const double> x, bool* clamped = nullptr) {
  const std::vector<double> outs = member_outputs(model, x, clamped);
  const double mean = std::accumulate(outs.begin(), outs.end(), 0.0) / static_cast<double>(outs.size());
  return model.scaler.unscale_target(mean);
}

/// Constant predictor of the training-target mean.
struct MeanRegressor {
  double mean = 0.0;
  double predict(std::span<const double> /*x*/ = {}) const noexcept { return mean; }
};

inline MeanRegressor train_mean(std::span<const double> targets) {
  if (targets.empty()) throw DomainError("mean regression needs at least one target");
  return {std::accumulate(targets.begin(), targets.end(), 0.0) / static_cast<double>(targets.size())};
}

// ---------------------------------------------------------------------------
// Persistence: versioned decimal text, shortest round-trip formatting so a
// reloaded model reproduces predictions exactly.

namespace detail {
inline void write_row(std::ostream& os, std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << format_double(v[i]);
  os << '\n';
}

inline std::vector<double> read_row(std::istream& is, std::size_t n, const char* what) {
  std::vector<double> v(n);
  std::string tok;
  for (auto& x : v) {
    if (!(is >> tok)) throw InputError(std::string("model file truncated in ") + what);
    auto d = parse_double(tok);
    if (!d) throw InputError(std::string("model file: bad number '") + tok + "' in " + what);
    x = *d;
  }
  return v;
}

inline void expect_token(std::istream& is, const std::string& want) {
  std::string tok;
  if (!(is >> tok) || tok != want) throw InputError("model file: expected '" + want + "', found '" + tok + "'");
}

template <class T>
T read_value(std::istream& is, const std::string& key) {
  expect_token(is, key);
  T v{};
  if (!(is >> v)) throw InputError("model file: bad value for '" + key + "'");
  return v;
}
} // namespace detail

inline void write_model(std::ostream& os, const BaggedModel& m) {
  const std::size_t inputs = m.scaler.dims();
  os << "bagged-model\n";
  os << "inputs " << inputs << "\nhidden " << (m.members.empty() ? kHiddenUnits : m.members.front().hidden) << "\nmembers "
     << m.members.size() << "\nseed " << m.seed << '\n';
  os << "target_range " << detail::format_double(m.scaler.target_min) << ' ' << detail::format_double(m.scaler.target_max) << '\n';
  os << "input_min ";
  detail::write_row(os, m.scaler.input_min);
  os << "input_max ";
  detail::write_row(os, m.scaler.input_max);
  for (std::size_t k = 0; k < m.members.size(); ++k) {
    const auto& net = m.members[k];
    os << "member " << k << '\n';
    for (std::size_t j = 0; j < net.hidden; ++j)
      detail::write_row(os, std::span<const double>(net.weights).subspan(j * net.hidden_stride(), net.hidden_stride()));
    detail::write_row(os, std::span<const double>(net.weights).subspan(net.output_offset(), net.hidden + 1));
  }
}

inline BaggedModel read_model(std::istream& is) {
  detail::expect_token(is, "bagged-model");
  BaggedModel m;
  const auto inputs = detail::read_value<std::size_t>(is, "inputs");
  const auto hidden = detail::read_value<std::size_t>(is, "hidden");
  const auto count = detail::read_value<std::size_t>(is, "members");
  m.seed = detail::read_value<std::uint64_t>(is, "seed");
  detail::expect_token(is, "target_range");
  const auto range = detail::read_row(is, 2, "target_range");
  m.scaler.target_min = range[0];
  m.scaler.target_max = range[1];
  detail::expect_token(is, "input_min");
  m.scaler.input_min = detail::read_row(is, inputs, "input_min");
  detail::expect_token(is, "input_max");
  m.scaler.input_max = detail::read_row(is, inputs, "input_max");
  for (std::size_t k = 0; k < count; ++k) {
    if (detail::read_value<std::size_t>(is, "member") != k) throw InputError("model file: members out of order");
    NetworkParams net{inputs, hidden, {}};
    net.weights = detail::read_row(is, net.weight_count(), "member weights");
    m.members.push_back(std::move(net));
  }
  return m;
}

/// One bagged model per target column, as written by `goeval train`.
struct ModelBundle {
  std::vector<std::string> target_names;
  std::vector<BaggedModel> models;
  std::string feature_config; ///< FeatureConfig::to_text() of the training matrix, may be empty
};

inline void write_bundle(std::ostream& os, const ModelBundle& b) {
  os << "#goeval-model v1\n";
  os << "targets " << b.target_names.size();
  for (const auto& n : b.target_names) os << ' ' << n;
  os << '\n';
  std::size_t lines = 0;
  for (char c : b.feature_config) lines += c == '\n';
  os << "config " << lines << '\n' << b.feature_config;
  for (const auto& m : b.models) write_model(os, m);
}

inline ModelBundle read_bundle(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "#goeval-model v1") throw InputError("not a goeval model file");
  ModelBundle b;
  const auto k = detail::read_value<std::size_t>(is, "targets");
  b.target_names.resize(k);
  for (auto& n : b.target_names) is >> n;
  const auto lines = detail::read_value<std::size_t>(is, "config");
  std::getline(is, line);
  for (std::size_t i = 0; i < lines && std::getline(is, line); ++i) b.feature_config += line + "\n";
  for (std::size_t i = 0; i < k; ++i) b.models.push_back(read_model(is));
  return b;
}

} // namespace goeval

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "goeval/error.hpp"
#include "goeval/model.hpp"
#include "goeval/rng.hpp"

namespace goeval {

struct LabeledDataset {
  std::vector<std::vector<double>> inputs;
  std::vector<double> targets;
  std::vector<std::string> groups; ///< optional; same length as targets when present

  std::size_t size() const noexcept { return targets.size(); }
};

inline double rmse(std::span<const double> predictions, std::span<const double> targets) {
  if (predictions.size() != targets.size() || predictions.empty()) throw DomainError("rmse needs two nonempty sequences of equal length");
  double sse = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) sse += (predictions[i] - targets[i]) * (predictions[i] - targets[i]);
  return std::sqrt(sse / static_cast<double>(predictions.size()));
}

/// Random partition of [0, n) into k folds whose sizes differ by at most one.
inline std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 1 || n < k) throw DomainError("k-fold split needs n >= k >= 1 (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t len = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos), order.begin() + static_cast<std::ptrdiff_t>(pos + len));
    std::sort(folds[f].begin(), folds[f].end());
    pos += len;
  }
  return folds;
}

/// Like kfold_split, but rows sharing a group id always land in the same fold.
inline std::vector<std::vector<std::size_t>> group_kfold_split(std::span<const std::string> groups, std::size_t k, std::uint64_t seed) {
  std::vector<std::string> ids;
  std::map<std::string, std::size_t> id_of;
  for (const auto& g : groups)
    if (id_of.emplace(g, ids.size()).second) ids.push_back(g);
  const auto group_folds = kfold_split(ids.size(), k, seed);
  std::vector<std::size_t> fold_of_group(ids.size());
  for (std::size_t f = 0; f < k; ++f)
    for (std::size_t gi : group_folds[f]) fold_of_group[gi] = f;
  std::vector<std::vector<std::size_t>> folds(k);
  for (std::size_t r = 0; r < groups.size(); ++r) folds[fold_of_group[id_of.at(groups[r])]].push_back(r);
  return folds;
}

struct ModelSpec {
  enum class Kind { mean, bagged };
  Kind kind = Kind::bagged;
  BaggingOptions bagging{};

  std::string label() const { return kind == Kind::mean ? "mean" : "bagged-nn"; }

  static ModelSpec named(std::string_view name) {
    if (name == "mean") return {Kind::mean, {}};
    if (name == "bagged-nn" || name == "bagged") return {Kind::bagged, {}};
    throw DomainError("unknown model '" + std::string(name) + "' (expected mean or bagged-nn)");
  }
};

/// Trains the model on one split and predicts the held-out rows.
inline std::vector<double> fit_predict(const ModelSpec& spec, std::span<const std::vector<double>> train_x, std::span<const double> train_y,
                                       std::span<const std::vector<double>> test_x, std::uint64_t seed) {
  std::vector<double> out;
  out.reserve(test_x.size());
  if (spec.kind == ModelSpec::Kind::mean) {
    const MeanRegressor m = train_mean(train_y);
    for (const auto& x : test_x) out.push_back(m.predict(x));
  } else {
    const BaggedModel m = train_bagged(train_x, train_y, seed, spec.bagging);
    for (const auto& x : test_x) out.push_back(predict(m, x));
  }
  return out;
}

struct CVOptions {
  std::size_t folds = 10;
  std::size_t repeats = 5;
  std::uint64_t seed = 0;
  bool group_aware = false;
};

struct CVReport {
  std::string model_label;
  std::string feature_label;
  std::vector<double> repeat_rmse;
  double mean = 0.0;
  double stddev = 0.0; ///< population deviation of repeat_rmse
  std::vector<std::vector<double>> predictions; ///< out-of-fold prediction per row, per repeat
  std::vector<std::vector<int>> test_counts;     ///< how often each row was tested, per repeat

  void summarize() {
    const double n = static_cast<double>(repeat_rmse.size());
    mean = std::accumulate(repeat_rmse.begin(), repeat_rmse.end(), 0.0) / n;
    double ss = 0.0;
    for (double r : repeat_rmse) ss += (r - mean) * (r - mean);
    stddev = std::sqrt(ss / n);
  }
};

/// Training and test rows for one fold.
struct FoldData {
  std::vector<std::vector<double>> train_x;
  std::vector<double> train_y;
  std::vector<std::vector<double>> test_x;
  std::vector<double> test_y;
};

/// Builds the data for a fold from (train indices, test indices).
using FoldProvider = std::function<FoldData(std::span<const std::size_t>, std::span<const std::size_t>)>;

inline FoldProvider slice_provider(const LabeledDataset& data) {
  return [&data](std::span<const std::size_t> train, std::span<const std::size_t> test) {
    FoldData fd;
    for (std::size_t i : train) {
      fd.train_x.push_back(data.inputs[i]);
      fd.train_y.push_back(data.targets[i]);
    }
    for (std::size_t i : test) {
      fd.test_x.push_back(data.inputs[i]);
      fd.test_y.push_back(data.targets[i]);
    }
    return fd;
  };
}

/// Repeated k-fold cross-validation. Each repeat draws a fresh partition;
/// squared errors of all folds are pooled into one RMSE per repeat.
inline CVReport cross_validate(std::size_t n, std::span<const std::string> groups, const FoldProvider& provider, const ModelSpec& spec,
                               const CVOptions& opt) {
  if (n < opt.folds) throw DomainError("cross-validation needs at least " + std::to_string(opt.folds) + " rows, got " + std::to_string(n));
  if (opt.repeats < 1) throw DomainError("cross-validation needs at least one repeat");
  if (opt.group_aware && groups.size() != n) throw DomainError("group-aware splitting needs a group id per row");
  CVReport rep;
  rep.model_label = spec.label();
  for (std::size_t r = 0; r < opt.repeats; ++r) {
    const std::uint64_t split_seed = derive_seed(opt.seed, 2 * r);
    const std::uint64_t model_seed = derive_seed(opt.seed, 2 * r + 1);
    const auto folds = opt.group_aware ? group_kfold_split(groups, opt.folds, split_seed) : kfold_split(n, opt.folds, split_seed);
    std::vector<double> pred(n, 0.0), truth(n, 0.0);
    std::vector<int> counts(n, 0);
    for (std::size_t f = 0; f < folds.size(); ++f) {
      std::vector<std::size_t> train;
      for (std::size_t g = 0; g < folds.size(); ++g)
        if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
      std::sort(train.begin(), train.end());
      try {
        const FoldData fd = provider(train, folds[f]);
        const auto p = fit_predict(spec, fd.train_x, fd.train_y, fd.test_x, derive_seed(model_seed, f));
        for (std::size_t t = 0; t < folds[f].size(); ++t) {
          pred[folds[f][t]] = p[t];
          truth[folds[f][t]] = fd.test_y[t];
          ++counts[folds[f][t]];
        }
      } catch (const std::exception& e) {
        throw std::runtime_error("cross-validation repeat " + std::to_string(r + 1) + ", fold " + std::to_string(f + 1) + " (" +
                                 std::to_string(train.size()) + " train / " + std::to_string(folds[f].size()) + " test rows): " + e.what());
      }
    }
    rep.repeat_rmse.push_back(rmse(pred, truth));
    rep.predictions.push_back(std::move(pred));
    rep.test_counts.push_back(std::move(counts));
  }
  rep.summarize();
  return rep;
}

inline CVReport cross_validate(const LabeledDataset& data, const ModelSpec& spec, const CVOptions& opt) {
  return cross_validate(data.size(), data.groups, slice_provider(data), spec, opt);
}

// ---------------------------------------------------------------------------
// Feature ablation

/// Contiguous column range of the evaluation vector.
struct ColumnRange {
  std::string name;
  std::size_t offset = 0;
  std::size_t length = 0;
};

inline LabeledDataset select_columns(const LabeledDataset& data, std::size_t offset, std::size_t length) {
  LabeledDataset out;
  out.targets = data.targets;
  out.groups = data.groups;
  out.inputs.reserve(data.size());
  for (const auto& row : data.inputs) {
    if (offset + length > row.size()) throw DomainError("column range exceeds row length");
    out.inputs.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(offset), row.begin() + static_cast<std::ptrdiff_t>(offset + length));
  }
  return out;
}

struct AblationRow {
  std::string feature;
  CVReport report;
  double mean_cmp = 1.0; ///< mean-regression RMSE / this row's RMSE
};

struct AblationTable {
  std::string title;
  std::vector<AblationRow> rows;
};

inline constexpr const char* kMeanRowLabel = "None (Mean regression)";
inline constexpr const char* kCombinedRowLabel = "All features combined";

inline FoldProvider column_provider(FoldProvider inner, std::size_t offset, std::size_t length) {
  return [inner = std::move(inner), offset, length](std::span<const std::size_t> train, std::span<const std::size_t> test) {
    FoldData fd = inner(train, test);
    auto cut = [&](std::vector<std::vector<double>>& rows) {
      for (auto& row : rows) {
        if (offset + length > row.size()) throw DomainError("column range exceeds row length");
        row = std::vector<double>(row.begin() + static_cast<std::ptrdiff_t>(offset), row.begin() + static_cast<std::ptrdiff_t>(offset + length));
      }
    };
    cut(fd.train_x);
    cut(fd.test_x);
    return fd;
  };
}

/// Mean-regression baseline, one row per column range, then all columns.
/// Mean cmp is the baseline RMSE divided by the row's RMSE.
inline AblationTable feature_ablation(std::size_t n, std::span<const std::string> groups, const FoldProvider& provider,
                                      std::span<const ColumnRange> ranges, const ModelSpec& spec, const CVOptions& opt) {
  AblationTable table;
  CVReport base = cross_validate(n, groups, provider, ModelSpec{ModelSpec::Kind::mean, {}}, opt);
  base.feature_label = kMeanRowLabel;
  table.rows.push_back({kMeanRowLabel, base, 1.0});
  for (const auto& r : ranges) {
    CVReport rep = cross_validate(n, groups, column_provider(provider, r.offset, r.length), spec, opt);
    rep.feature_label = r.name;
    table.rows.push_back({r.name, rep, base.mean / rep.mean});
  }
  CVReport all = cross_validate(n, groups, provider, spec, opt);
  all.feature_label = kCombinedRowLabel;
  table.rows.push_back({kCombinedRowLabel, all, base.mean / all.mean});
  return table;
}

inline AblationTable feature_ablation(const LabeledDataset& data, std::span<const ColumnRange> ranges, const ModelSpec& spec,
                                      const CVOptions& opt) {
  if (data.size() == 0) throw DomainError("ablation needs data");
  return feature_ablation(data.size(), data.groups, slice_provider(data), ranges, spec, opt);
}

/// Element-wise average of same-shaped tables (several style scales in one
/// table). Mean cmp is recomputed from the averaged RMSEs.
inline AblationTable average_tables(std::span<const AblationTable> tables, std::string title) {
  if (tables.empty()) throw DomainError("nothing to average");
  AblationTable out;
  out.title = std::move(title);
  for (std::size_t i = 0; i < tables.front().rows.size(); ++i) {
    AblationRow row;
    row.feature = tables.front().rows[i].feature;
    row.report.model_label = tables.front().rows[i].report.model_label;
    row.report.feature_label = row.feature;
    const std::size_t repeats = tables.front().rows[i].report.repeat_rmse.size();
    row.report.repeat_rmse.assign(repeats, 0.0);
    double mean = 0.0, sd = 0.0;
    for (const auto& t : tables) {
      const auto& src = t.rows.at(i);
      for (std::size_t r = 0; r < repeats; ++r) row.report.repeat_rmse[r] += src.report.repeat_rmse.at(r) / tables.size();
      mean += src.report.mean / tables.size();
      sd += src.report.stddev / tables.size();
    }
    row.report.mean = mean;
    row.report.stddev = sd;
    out.rows.push_back(std::move(row));
  }
  for (auto& row : out.rows) row.mean_cmp = out.rows.front().report.mean / row.report.mean;
  return out;
}

} // namespace goeval

#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "goeval/crossval.hpp"
#include "goeval/sgf.hpp"

namespace goeval {

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// Plain-text table: Feature | RMSE error | Mean cmp.
inline void write_table(std::ostream& os, const AblationTable& t) {
  std::vector<std::array<std::string, 3>> cells{{"Feature", "RMSE error", "Mean cmp"}};
  for (const auto& r : t.rows) cells.push_back({r.feature, fixed(r.report.mean, 3) + " +- " + fixed(r.report.stddev, 3), fixed(r.mean_cmp, 2)});
  std::array<std::size_t, 3> width{};
  for (const auto& row : cells)
    for (std::size_t c = 0; c < 3; ++c) width[c] = std::max(width[c], row[c].size());
  auto rule = [&] { os << std::string(width[0] + width[1] + width[2] + 6, '-') << '\n'; };
  if (!t.title.empty()) os << t.title << '\n';
  rule();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    os << cells[i][0] << std::string(width[0] - cells[i][0].size() + 3, ' ') << cells[i][1]
       << std::string(width[1] - cells[i][1].size() + 3, ' ') << cells[i][2] << '\n';
    if (i == 0 || i == 1 || i + 2 == cells.size()) rule();
  }
  rule();
}

/// Machine-readable rows: table, feature, model, mean, stddev, mean_cmp, rmse per repeat.
inline void write_tsv(std::ostream& os, const AblationTable& t, bool header) {
  if (header) os << "table\tfeature\tmodel\trmse_mean\trmse_std\tmean_cmp\trepeat_rmse\n";
  for (const auto& r : t.rows) {
    os << t.title << '\t' << r.feature << '\t' << r.report.model_label << '\t' << detail::format_double(r.report.mean) << '\t'
       << detail::format_double(r.report.stddev) << '\t' << detail::format_double(r.mean_cmp) << '\t';
    for (std::size_t i = 0; i < r.report.repeat_rmse.size(); ++i) os << (i ? "," : "") << detail::format_double(r.report.repeat_rmse[i]);
    os << '\n';
  }
}

} // namespace goeval

#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "emopipe/common/csv.hpp"
#include "emopipe/common/metadata.hpp"
#include "emopipe/common/strings.hpp"
#include "emopipe/econo/model.hpp"
#include "emopipe/econo/summary.hpp"

namespace emopipe::econo {

// *** p < 0.01, ** p < 0.05, * p < 0.1
inline std::string stars(double p) {
  if (!(p == p)) return "";
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

inline std::string column_label(const RegressionResult& r) {
  return r.horizon > 0 ? r.spec + " (t+" + std::to_string(r.horizon) + ")" : r.spec;
}

// Long format: one row per coefficient, model statistics repeated per row.
inline void write_results_csv(std::ostream& out, const std::vector<RegressionResult>& results,
                              const RunMetadata* meta = nullptr) {
  if (meta) meta->write_comment(out);
  csv::write_row(out, {"spec", "horizon", "dependent", "term", "estimate", "se", "t", "p", "stars", "n", "r2",
                       "r2_within", "within_sd", "clusters", "cov_floored"});
  for (const auto& r : results) {
    std::vector<std::string> groups;
    for (auto g : r.cluster_groups) groups.push_back(std::to_string(g));
    for (std::size_t k = 0; k < r.names.size(); ++k)
      csv::write_row(out, {r.spec, std::to_string(r.horizon), r.dependent, r.names[k], str::format_double(r.beta(k)),
                           str::format_double(r.se(k)), str::format_double(r.t(k)), str::format_double(r.p(k)),
                           stars(r.p(k)), std::to_string(r.n), str::format_double(r.r2),
                           str::format_double(r.r2_within), str::format_double(r.within_sd), str::join(groups, "x"),
                           r.cov_floored ? "1" : "0"});
  }
}

namespace detail {

inline void write_aligned(std::ostream& out, const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> width;
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == 0) line += row[c] + std::string(width[c] - row[c].size(), ' ');
      else line += "  " + std::string(width[c] - row[c].size(), ' ') + row[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
}

}  // namespace detail

// Coefficients with stars, standard errors in parentheses beneath, then the
// within SD of the dependent, observations and R².
inline void write_results_table(std::ostream& out, const std::vector<RegressionResult>& results, int digits = 4,
                                const RunMetadata* meta = nullptr) {
  if (meta) meta->write_comment(out);
  std::vector<std::string> terms;
  for (const auto& r : results)
    for (const auto& n : r.names)
      if (std::find(terms.begin(), terms.end(), n) == terms.end()) terms.push_back(n);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head = {""}, deps = {"Dependent"};
  for (std::size_t i = 0; i < results.size(); ++i) {
    head.push_back("(" + std::to_string(i + 1) + ")");
    deps.push_back(results[i].dependent);
  }
  cells.push_back(head);
  cells.push_back(deps);
  std::vector<std::string> labels = {""};
  for (const auto& r : results) labels.push_back(column_label(r));
  cells.push_back(labels);
  for (const auto& term : terms) {
    std::vector<std::string> coef = {term}, se = {""};
    for (const auto& r : results) {
      auto k = r.index_of(term);
      coef.push_back(k ? str::fixed(r.beta(*k), digits) + stars(r.p(*k)) : "");
      se.push_back(k ? "(" + str::fixed(r.se(*k), digits) + ")" : "");
    }
    cells.push_back(coef);
    cells.push_back(se);
  }
  std::vector<std::string> sd = {"sigma_y within"}, obs = {"Observations"}, r2 = {"R2"}, r2w = {"Within R2"};
  for (const auto& r : results) {
    sd.push_back(str::fixed(r.within_sd, digits));
    obs.push_back(std::to_string(r.n));
    r2.push_back(str::fixed(r.r2, 3));
    r2w.push_back(str::fixed(r.r2_within, 3));
  }
  cells.push_back(sd);
  cells.push_back(obs);
  cells.push_back(r2);
  cells.push_back(r2w);
  detail::write_aligned(out, cells);
  out << "Standard errors in parentheses. *** p<0.01, ** p<0.05, * p<0.1\n";
}

inline void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows, const RunMetadata* meta = nullptr) {
  if (meta) meta->write_comment(out);
  csv::write_row(out, {"variable", "n", "mean", "sd", "within_sd"});
  for (const auto& r : rows)
    csv::write_row(out, {r.name, std::to_string(r.n), str::format_double(r.mean), str::format_double(r.sd),
                         str::format_double(r.within_sd)});
}

inline void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& rows, int digits = 3,
                                const RunMetadata* meta = nullptr) {
  if (meta) meta->write_comment(out);
  std::vector<std::vector<std::string>> cells = {{"Variable", "Mean", "SD", "Within SD", "N"}};
  for (const auto& r : rows)
    cells.push_back({r.name, str::fixed(r.mean, digits), str::fixed(r.sd, digits), str::fixed(r.within_sd, digits),
                     std::to_string(r.n)});
  detail::write_aligned(out, cells);
}

inline void write_correlation_csv(std::ostream& out, const CorrelationMatrix& m, const RunMetadata* meta = nullptr) {
  if (meta) meta->write_comment(out);
  csv::write_row(out, {"row", "column", "r", "p_bonferroni", "n", "stars"});
  for (std::size_t i = 0; i < m.names.size(); ++i)
    for (std::size_t j = 0; j < m.names.size(); ++j) {
      const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
      csv::write_row(out, {m.names[i], m.names[j], str::format_double(m.r(a, b)), str::format_double(m.p(a, b)),
                           std::to_string(m.n(a, b)), i == j ? "" : stars(m.p(a, b))});
    }
}

// Lower triangle with stars from the adjusted p-values.
inline void write_correlation_table(std::ostream& out, const CorrelationMatrix& m, int digits = 2,
                                    const RunMetadata* meta = nullptr) {
  if (meta) meta->write_comment(out);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head = {""};
  for (std::size_t j = 0; j < m.names.size(); ++j) head.push_back("(" + std::to_string(j + 1) + ")");
  cells.push_back(head);
  for (std::size_t i = 0; i < m.names.size(); ++i) {
    std::vector<std::string> row = {"(" + std::to_string(i + 1) + ") " + m.names[i]};
    for (std::size_t j = 0; j <= i; ++j) {
      const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
      row.push_back(str::fixed(m.r(a, b), digits) + (i == j ? "" : stars(m.p(a, b))));
    }
    cells.push_back(row);
  }
  detail::write_aligned(out, cells);
  out << "Bonferroni-adjusted over " << m.pairs << " pairs. *** p<0.01, ** p<0.05, * p<0.1\n";
}

}  // namespace emopipe::econo

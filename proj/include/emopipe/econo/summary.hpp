#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <string>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/econo/demean.hpp"
#include "emopipe/econo/model.hpp"
#include "emopipe/econo/panel.hpp"

namespace emopipe::econo {

struct SummaryRow {
  std::string name;
  std::size_t n = 0;
  double mean = kNaN;
  double sd = kNaN;
  double within_sd = kNaN;  // after removing the fixed effects
};

// Per column, over the rows where it is present. SDs use n - 1.
inline std::vector<SummaryRow> summary_stats(const Panel& p, const std::vector<std::string>& columns,
                                             const std::vector<std::string>& fixed_effects = {"firm", "date"},
                                             const FitOptions& opt = {}) {
  std::vector<SummaryRow> out;
  for (const auto& name : columns) {
    const auto& col = p.column(name);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < col.size(); ++i)
      if (std::isfinite(col[i])) rows.push_back(i);
    SummaryRow r;
    r.name = name;
    r.n = rows.size();
    if (r.n == 0) {
      out.push_back(r);
      continue;
    }
    Eigen::MatrixXd x(static_cast<Eigen::Index>(r.n), 1);
    for (std::size_t i = 0; i < r.n; ++i) x(static_cast<Eigen::Index>(i), 0) = col[rows[i]];
    r.mean = x.col(0).mean();
    if (r.n > 1) {
      r.sd = std::sqrt((x.col(0).array() - r.mean).square().sum() / static_cast<double>(r.n - 1));
      std::vector<Grouping> fe;
      for (const auto& d : fixed_effects) fe.push_back(detail::grouping_for(p, d, rows));
      auto dm = demean(x, fe, opt.demean_tol, opt.demean_max_iter);
      const double c = fe.empty() ? r.mean : 0.0;
      r.within_sd = std::sqrt((dm.x.col(0).array() - c).square().sum() / static_cast<double>(r.n - 1));
    }
    out.push_back(r);
  }
  return out;
}

struct CorrelationMatrix {
  std::vector<std::string> names;
  Eigen::MatrixXd r;        // NaN where undefined
  Eigen::MatrixXd p;        // Bonferroni-adjusted two-sided p-values, capped at 1
  Eigen::MatrixXi n;        // pairwise-complete counts
  std::size_t pairs = 0;    // number of distinct pairs the p-values were multiplied by
};

// Pearson correlation and its two-sided t-test p-value on n - 2 degrees of freedom.
inline std::pair<double, double> pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  if (n < 3) return {kNaN, kNaN};
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return {kNaN, kNaN};
  const double r = std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
  if (std::abs(r) == 1.0) return {r, 0.0};
  const double df = static_cast<double>(n - 2);
  const double t = r * std::sqrt(df / (1.0 - r * r));
  boost::math::students_t dist(df);
  return {r, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)))};
}

inline CorrelationMatrix correlation_matrix(const Panel& p, const std::vector<std::string>& columns) {
  if (columns.size() < 2) throw ValidationError("correlation matrix needs at least two columns");
  const auto k = static_cast<Eigen::Index>(columns.size());
  CorrelationMatrix out;
  out.names = columns;
  out.r = Eigen::MatrixXd::Constant(k, k, kNaN);
  out.p = Eigen::MatrixXd::Constant(k, k, kNaN);
  out.n = Eigen::MatrixXi::Zero(k, k);
  out.pairs = columns.size() * (columns.size() - 1) / 2;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i; j < k; ++j) {
      const auto& a = p.column(columns[static_cast<std::size_t>(i)]);
      const auto& b = p.column(columns[static_cast<std::size_t>(j)]);
      std::vector<double> xa, xb;
      for (std::size_t row = 0; row < a.size(); ++row)
        if (std::isfinite(a[row]) && std::isfinite(b[row])) {
          xa.push_back(a[row]);
          xb.push_back(b[row]);
        }
      auto [r, pv] = pearson(xa, xb);
      const double adj = i == j || std::isnan(pv) ? pv : std::min(1.0, pv * static_cast<double>(out.pairs));
      out.r(i, j) = out.r(j, i) = r;
      out.p(i, j) = out.p(j, i) = adj;
      out.n(i, j) = out.n(j, i) = static_cast<int>(xa.size());
    }
  return out;
}

}  // namespace emopipe::econo

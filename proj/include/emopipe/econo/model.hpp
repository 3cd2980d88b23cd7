#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/econo/cluster.hpp"
#include "emopipe/econo/demean.hpp"
#include "emopipe/econo/ols.hpp"
#include "emopipe/econo/panel.hpp"
#include "emopipe/econo/spec.hpp"
#include "emopipe/econo/winsorize.hpp"

namespace emopipe::econo {

struct RegressionResult {
  std::string spec;
  std::string dependent;
  std::vector<std::string> names;
  Eigen::VectorXd beta;
  Eigen::MatrixXd cov;
  std::size_t n = 0;
  double r2_within = 0.0;  // R² of the demeaned regression
  double r2 = 0.0;         // 1 - SSR / TSS of the undemeaned dependent
  double within_sd = 0.0;  // SD of the dependent after removing the fixed effects
  std::size_t df = 0;      // degrees of freedom for t tests
  std::vector<std::size_t> cluster_groups;
  bool cov_floored = false;
  std::size_t demean_iterations = 0;
  double demean_residual = 0.0;
  int horizon = 0;
  std::optional<double> moderator_median;

  double se(std::size_t k) const { return std::sqrt(cov(k, k)); }
  double t(std::size_t k) const { return beta(k) / se(k); }
  double p(std::size_t k) const {
    const double tv = t(k);
    if (!std::isfinite(tv)) return se(k) == 0.0 && beta(k) != 0.0 ? 0.0 : 1.0;
    boost::math::students_t dist(static_cast<double>(std::max<std::size_t>(df, 1)));
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(tv)));
  }
  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t k = 0; k < names.size(); ++k)
      if (names[k] == name) return k;
    return std::nullopt;
  }
};

struct FitOptions {
  double demean_tol = 1e-10;
  std::size_t demean_max_iter = 1000;
};

// A regressor supplied as a full-panel column.
struct Regressor {
  std::string name;
  std::vector<double> values;
  bool winsorize = true;
};

namespace detail {

inline Grouping grouping_for(const Panel& p, const std::string& dim, const std::vector<std::size_t>& rows) {
  const auto keys = p.key_strings(dim);
  std::vector<std::string> sub;
  sub.reserve(rows.size());
  for (auto r : rows) sub.push_back(keys[r]);
  Grouping g;
  g.code = encode_groups(sub, &g.count);
  return g;
}

// Rows passing every filter with all listed values present.
inline std::vector<std::size_t> estimation_rows(const Panel& p, const RegressionSpec& s,
                                                const std::vector<const std::vector<double>*>& needed) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    bool ok = true;
    for (const auto* col : needed) ok = ok && std::isfinite((*col)[i]);
    for (const auto& f : s.filters) ok = ok && f.pass(p.column(f.column)[i]);
    if (ok) rows.push_back(i);
  }
  return rows;
}

inline std::vector<double> take(const std::vector<double>& col, const std::vector<std::size_t>& rows) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (auto r : rows) out.push_back(col[r]);
  return out;
}

}  // namespace detail

// Winsorize -> demean -> OLS -> clustered covariance on the rows where the
// dependent and all regressors are present. `build` may append regressors
// computed on the estimation sample (already winsorized inputs).
template <typename Build>
RegressionResult estimate(const Panel& p, const RegressionSpec& s, const std::string& dependent,
                          const std::vector<std::string>& base, const std::vector<const std::vector<double>*>& extra_needed,
                          Build&& build, const FitOptions& opt = {}) {
  std::vector<const std::vector<double>*> needed = {&p.column(dependent)};
  for (const auto& r : base) needed.push_back(&p.column(r));
  needed.insert(needed.end(), extra_needed.begin(), extra_needed.end());
  const auto rows = detail::estimation_rows(p, s, needed);

  auto y = detail::take(p.column(dependent), rows);
  std::vector<Regressor> regs;
  for (const auto& r : base) regs.push_back({r, detail::take(p.column(r), rows), true});
  if (rows.empty()) throw ValidationError("spec [" + s.name + "]: no observations after filters and missing values");
  if (s.winsor) {
    winsorize(y, s.winsor->first, s.winsor->second);
    for (auto& r : regs) winsorize(r.values, s.winsor->first, s.winsor->second);
  }
  build(rows, regs);

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto k = static_cast<Eigen::Index>(regs.size());
  const bool intercept = s.fixed_effects.empty();
  Eigen::MatrixXd m(n, k + 1 + (intercept ? 1 : 0));
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, 0) = y[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < k; ++j) m(i, j + 1) = regs[static_cast<std::size_t>(j)].values[static_cast<std::size_t>(i)];
  }
  RegressionResult out;
  out.spec = s.name;
  out.dependent = dependent;
  for (const auto& r : regs) out.names.push_back(r.name);
  out.n = rows.size();

  const Eigen::VectorXd y_raw = m.col(0);
  std::vector<Grouping> fe;
  for (const auto& d : s.fixed_effects) fe.push_back(detail::grouping_for(p, d, rows));
  auto dm = demean(m.leftCols(k + 1), fe, opt.demean_tol, opt.demean_max_iter);
  out.demean_iterations = dm.iterations;
  out.demean_residual = dm.max_group_mean;
  m.leftCols(k + 1) = dm.x;
  if (intercept) {
    m.col(k + 1).setOnes();
    out.names.push_back("const");
  }

  const Eigen::VectorXd yt = m.col(0);
  const double ybar = intercept ? yt.mean() : 0.0;
  out.within_sd = n > 1 ? std::sqrt((yt.array() - ybar).square().sum() / static_cast<double>(n - 1)) : 0.0;
  const double scale = std::max(1.0, y_raw.cwiseAbs().maxCoeff());
  if (!(out.within_sd > 1e-12 * scale))
    throw NumericError("spec [" + s.name + "]: dependent '" + dependent + "' has no variation after fixed effects");

  const Eigen::MatrixXd x = m.rightCols(m.cols() - 1);
  auto fit = ols(x, yt, out.names);
  out.beta = fit.beta;
  out.r2_within = fit.r2;
  const double tss_raw = (y_raw.array() - y_raw.mean()).square().sum();
  out.r2 = tss_raw > 0.0 ? 1.0 - fit.ssr / tss_raw : 0.0;

  if (s.clusters.empty()) {
    const double dof = static_cast<double>(n - x.cols());
    out.cov = (fit.ssr / dof) * (x.transpose() * x).inverse();
    out.df = static_cast<std::size_t>(n - x.cols());
  } else {
    std::vector<Grouping> cl;
    for (const auto& d : s.clusters) cl.push_back(detail::grouping_for(p, d, rows));
    auto cc = cluster_covariance(x, fit.residuals, cl);
    out.cov = cc.cov;
    out.cov_floored = cc.floored;
    out.cluster_groups = cc.groups;
    out.df = *std::min_element(cc.groups.begin(), cc.groups.end()) - 1;
  }
  return out;
}

inline RegressionResult fit_fe_model(const Panel& p, const RegressionSpec& s, const FitOptions& opt = {}) {
  validate_spec(s, p);
  return estimate(p, s, s.dependent, s.regressors, {}, [](const auto&, auto&) {}, opt);
}

// Adds dummy = 1{moderator > median} (or < median for side "below") over the
// estimation sample, and the product of the interacted regressor with it.
// Ties at the median fall in the "not above" group.
inline RegressionResult fit_interaction_model(const Panel& p, const RegressionSpec& s, const FitOptions& opt = {}) {
  validate_spec(s, p);
  const auto& mod = p.column(s.moderator);
  std::optional<double> median;
  std::string dummy_name = (s.moderator_above ? "high_" : "low_") + s.moderator;
  auto build = [&](const std::vector<std::size_t>& rows, std::vector<Regressor>& regs) {
    auto vals = detail::take(mod, rows);
    std::vector<double> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    std::vector<double> dummy(n);
    std::size_t ones = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool in = s.moderator_above ? vals[i] > *median : vals[i] < *median;
      dummy[i] = in ? 1.0 : 0.0;
      ones += in;
    }
    if (ones == 0 || ones == n)
      throw ValidationError("spec [" + s.name + "]: moderator '" + s.moderator + "' gives a degenerate median dummy");
    std::size_t at = 0;
    while (regs[at].name != s.interact) ++at;
    std::vector<double> product(n);
    for (std::size_t i = 0; i < n; ++i) product[i] = regs[at].values[i] * dummy[i];
    std::vector<Regressor> ordered;
    ordered.push_back(regs[at]);
    ordered.push_back({s.interact + "_x_" + dummy_name, std::move(product), false});
    ordered.push_back({dummy_name, std::move(dummy), false});
    for (std::size_t j = 0; j < regs.size(); ++j)
      if (j != at) ordered.push_back(std::move(regs[j]));
    regs = std::move(ordered);
  };
  auto r = estimate(p, s, s.dependent, s.regressors, {&mod}, build, opt);
  r.moderator_median = median;
  return r;
}

// One regression per horizon h with dependent_{t+h}; h = 0 is the baseline.
inline std::vector<RegressionResult> fit_leads(const Panel& p, const RegressionSpec& s, const FitOptions& opt = {}) {
  validate_spec(s, p);
  std::vector<RegressionResult> out;
  for (auto h : s.horizons) {
    const std::string dep = h == 0 ? s.dependent : s.dependent + "_lead" + std::to_string(h);
    auto r = estimate(p, s, dep, s.regressors, {}, [](const auto&, auto&) {}, opt);
    r.horizon = static_cast<int>(h);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<RegressionResult> fit_spec(const Panel& p, const RegressionSpec& s, const FitOptions& opt = {}) {
  switch (s.kind) {
    case ModelKind::interaction: return {fit_interaction_model(p, s, opt)};
    case ModelKind::leads: return fit_leads(p, s, opt);
    default: return {fit_fe_model(p, s, opt)};
  }
}

}  // namespace emopipe::econo

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/common/strings.hpp"

namespace emopipe::econo {

struct OlsResult {
  Eigen::VectorXd beta;
  Eigen::VectorXd residuals;
  double ssr = 0.0;
  double r2 = 0.0;  // 1 - SSR / centered TSS of the y passed in
};

inline constexpr double kRankTolerance = 1e-10;

// Least squares by column-pivoted QR. A rank-deficient X raises an error that
// names the columns the pivoting left out.
inline OlsResult ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const std::vector<std::string>& names = {}) {
  if (x.rows() != y.rows()) throw ValidationError("ols: X and y row counts differ");
  if (x.cols() == 0) throw ValidationError("ols: no regressors");
  if (x.rows() <= x.cols())
    throw ValidationError("ols: " + std::to_string(x.rows()) + " observations for " + std::to_string(x.cols()) +
                          " regressors");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < x.cols()) {
    std::vector<std::string> dropped;
    for (Eigen::Index k = qr.rank(); k < x.cols(); ++k) {
      const auto col = qr.colsPermutation().indices()(k);
      dropped.push_back(static_cast<std::size_t>(col) < names.size() ? names[col] : "column " + std::to_string(col));
    }
    throw NumericError("regressors are collinear (after fixed effects): " + str::join(dropped, ", "));
  }
  OlsResult r;
  r.beta = qr.solve(y);
  r.residuals = y - x * r.beta;
  r.ssr = r.residuals.squaredNorm();
  const double tss = (y.array() - y.mean()).matrix().squaredNorm();
  r.r2 = tss > 0.0 ? 1.0 - r.ssr / tss : 0.0;
  return r;
}

}  // namespace emopipe::econo

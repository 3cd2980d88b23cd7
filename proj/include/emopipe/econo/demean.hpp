#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/common/strings.hpp"

namespace emopipe::econo {

// Integer codes 0..count-1 for one fixed-effect or cluster dimension.
struct Grouping {
  std::vector<int> code;
  std::size_t count = 0;
};

struct DemeanResult {
  Eigen::MatrixXd x;
  std::size_t iterations = 0;
  double max_group_mean = 0.0;  // largest |group mean| left in any dimension
};

namespace detail {

// Subtracts group means in place; returns the largest |mean| removed.
inline double subtract_group_means(Eigen::MatrixXd& x, const Grouping& g) {
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.count), x.cols());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.count));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    sums.row(g.code[i]) += x.row(i);
    counts(g.code[i]) += 1.0;
  }
  for (Eigen::Index k = 0; k < sums.rows(); ++k)
    if (counts(k) > 0) sums.row(k) /= counts(k);
  for (Eigen::Index i = 0; i < x.rows(); ++i) x.row(i) -= sums.row(g.code[i]);
  return sums.size() ? sums.cwiseAbs().maxCoeff() : 0.0;
}

inline double max_group_mean(const Eigen::MatrixXd& x, const Grouping& g) {
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.count), x.cols());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.count));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    sums.row(g.code[i]) += x.row(i);
    counts(g.code[i]) += 1.0;
  }
  double m = 0.0;
  for (Eigen::Index k = 0; k < sums.rows(); ++k)
    if (counts(k) > 0) m = std::max(m, sums.row(k).cwiseAbs().maxCoeff() / counts(k));
  return m;
}

}  // namespace detail

// Within transformation by alternating projections: subtract each dimension's
// group means in turn until every group mean in every dimension is below tol.
// One dimension takes a single exact pass.
inline DemeanResult demean(Eigen::MatrixXd x, const std::vector<Grouping>& dims, double tol = 1e-10,
                           std::size_t max_iter = 1000) {
  for (const auto& g : dims)
    if (g.code.size() != static_cast<std::size_t>(x.rows())) throw ValidationError("group codes do not match rows");
  DemeanResult r;
  if (dims.empty() || x.rows() == 0) {
    r.x = std::move(x);
    return r;
  }
  for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
    for (const auto& g : dims) detail::subtract_group_means(x, g);
    r.max_group_mean = 0.0;
    for (std::size_t d = 0; d + 1 < dims.size(); ++d)
      r.max_group_mean = std::max(r.max_group_mean, detail::max_group_mean(x, dims[d]));
    if (r.max_group_mean < tol) {
      r.x = std::move(x);
      return r;
    }
  }
  throw NumericError("fixed-effect demeaning did not converge in " + std::to_string(max_iter) +
                     " iterations (largest group mean " + str::format_double(r.max_group_mean) + ")");
}

inline DemeanResult demean_two_way(Eigen::MatrixXd x, const Grouping& firms, const Grouping& dates, double tol = 1e-10,
                                   std::size_t max_iter = 1000) {
  return demean(std::move(x), {firms, dates}, tol, max_iter);
}

}  // namespace emopipe::econo

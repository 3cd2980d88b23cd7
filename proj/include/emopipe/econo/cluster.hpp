#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/econo/demean.hpp"

namespace emopipe::econo {

struct ClusterCovariance {
  Eigen::MatrixXd cov;
  Eigen::MatrixXd raw;  // before eigenvalue flooring
  std::vector<std::size_t> groups;  // G per clustering dimension
  bool floored = false;             // negative eigenvalues were set to zero
  double min_eigenvalue = 0.0;      // before flooring
};

// One-way cluster sandwich with the G/(G-1) * (N-1)/(N-K) correction.
inline Eigen::MatrixXd cluster_sandwich(const Eigen::MatrixXd& x, const Eigen::VectorXd& e, const Grouping& g,
                                        const Eigen::MatrixXd& bread) {
  if (g.count < 2) throw ValidationError("clustered variance needs at least 2 clusters");
  const auto k = x.cols();
  Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.count), k);
  for (Eigen::Index i = 0; i < x.rows(); ++i) scores.row(g.code[i]) += e(i) * x.row(i);
  const Eigen::MatrixXd meat = scores.transpose() * scores;
  const double n = static_cast<double>(x.rows());
  const double gc = static_cast<double>(g.count);
  const double c = gc / (gc - 1.0) * (n - 1.0) / (n - static_cast<double>(k));
  return c * bread * meat * bread;
}

// Codes for the intersection of two groupings (each observed pair is a cluster).
inline Grouping intersect(const Grouping& a, const Grouping& b) {
  std::map<std::pair<int, int>, int> codes;
  Grouping g;
  g.code.reserve(a.code.size());
  for (std::size_t i = 0; i < a.code.size(); ++i) {
    auto [it, fresh] = codes.emplace(std::make_pair(a.code[i], b.code[i]), static_cast<int>(codes.size()));
    g.code.push_back(it->second);
  }
  g.count = codes.size();
  return g;
}

// Multi-way clustering by inclusion-exclusion: V = V_a + V_b - V_ab for two
// dimensions, a plain sandwich for one. A covariance that is not positive
// semidefinite is repaired by flooring its eigenvalues at zero.
inline ClusterCovariance cluster_covariance(const Eigen::MatrixXd& x, const Eigen::VectorXd& e,
                                            const std::vector<Grouping>& dims) {
  if (dims.empty() || dims.size() > 2) throw ValidationError("clustering supports one or two dimensions");
  for (const auto& g : dims)
    if (g.code.size() != static_cast<std::size_t>(x.rows())) throw ValidationError("cluster codes do not match rows");
  const Eigen::MatrixXd bread = (x.transpose() * x).inverse();
  ClusterCovariance out;
  for (const auto& g : dims) out.groups.push_back(g.count);
  if (dims.size() == 1) {
    out.cov = cluster_sandwich(x, e, dims[0], bread);
  } else {
    const auto ab = intersect(dims[0], dims[1]);
    out.cov = cluster_sandwich(x, e, dims[0], bread) + cluster_sandwich(x, e, dims[1], bread);
    out.cov -= cluster_sandwich(x, e, ab, bread);
  }
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  out.raw = out.cov;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out.cov);
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  if (out.min_eigenvalue < 0.0) {
    out.floored = true;
    const Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
    out.cov = eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().transpose();
    out.cov = 0.5 * (out.cov + out.cov.transpose());
  }
  return out;
}

inline ClusterCovariance cluster_se_two_way(const Eigen::MatrixXd& x, const Eigen::VectorXd& e, const Grouping& a,
                                            const Grouping& b) {
  return cluster_covariance(x, e, {a, b});
}

}  // namespace emopipe::econo

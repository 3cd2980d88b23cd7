#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/econo/panel.hpp"

namespace emopipe::econo {

// Type-1 sample quantile: the order statistic at rank ceil(q * n), ranks from 1.
inline double quantile_type1(std::vector<double> finite, double q) {
  if (finite.empty()) throw ValidationError("quantile of an empty sample");
  std::sort(finite.begin(), finite.end());
  const double n = static_cast<double>(finite.size());
  // The small slack keeps q * n from landing one rank high through rounding.
  auto rank = static_cast<std::size_t>(std::ceil(q * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, finite.size());
  return finite[rank - 1];
}

struct WinsorBounds {
  double lo = kNaN;
  double hi = kNaN;
  std::size_t clamped = 0;
};

// Clamps finite values to [Q(lo), Q(hi)]; missing values stay missing.
inline WinsorBounds winsorize(std::vector<double>& x, double lo = 0.001, double hi = 0.999) {
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) throw ValidationError("winsor limits must satisfy 0 <= lo < hi <= 1");
  std::vector<double> finite;
  for (double v : x)
    if (std::isfinite(v)) finite.push_back(v);
  if (finite.empty()) throw ValidationError("cannot winsorize an all-missing column");
  WinsorBounds b;
  b.lo = quantile_type1(finite, lo);
  b.hi = quantile_type1(std::move(finite), hi);
  for (double& v : x) {
    if (!std::isfinite(v)) continue;
    if (v < b.lo) {
      v = b.lo;
      ++b.clamped;
    } else if (v > b.hi) {
      v = b.hi;
      ++b.clamped;
    }
  }
  return b;
}

}  // namespace emopipe::econo

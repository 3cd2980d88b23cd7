#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/emoclass/emotion.hpp"
#include "emopipe/emoclass/tfidf.hpp"
#include "json.hpp"

namespace emopipe::emoclass {

// Multinomial logistic regression over the 7 emotion classes.
struct SoftmaxModel {
  std::size_t features = 0;
  std::vector<double> weights;  // kNumEmotions x features, row-major
  std::vector<double> bias = std::vector<double>(kNumEmotions, 0.0);
  double final_loss = 0.0;
  std::size_t iterations = 0;

  static SoftmaxModel zeros(std::size_t features) {
    SoftmaxModel m;
    m.features = features;
    m.weights.assign(kNumEmotions * features, 0.0);
    return m;
  }

  double& w(std::size_t cls, std::size_t col) { return weights[cls * features + col]; }
  double w(std::size_t cls, std::size_t col) const { return weights[cls * features + col]; }

  std::array<double, kNumEmotions> logits(const SparseVector& x) const {
    std::array<double, kNumEmotions> z{};
    for (std::size_t c = 0; c < kNumEmotions; ++c) {
      double s = bias[c];
      for (const auto& [j, v] : x)
        if (j < features) s += w(c, j) * v;
      z[c] = s;
    }
    return z;
  }

  EmotionDistribution predict(const SparseVector& x) const {
    auto z = logits(x);
    const double mx = *std::max_element(z.begin(), z.end());
    EmotionDistribution d;
    double total = 0.0;
    for (std::size_t c = 0; c < kNumEmotions; ++c) total += d.p[c] = std::exp(z[c] - mx);
    for (double& p : d.p) p /= total;
    return d;
  }

  nlohmann::json to_json() const {
    return {{"features", features}, {"weights", weights}, {"bias", bias}, {"final_loss", final_loss},
            {"iterations", iterations}};
  }
  static SoftmaxModel from_json(const nlohmann::json& j) {
    SoftmaxModel m;
    m.features = j.at("features").get<std::size_t>();
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<std::vector<double>>();
    m.final_loss = j.value("final_loss", 0.0);
    m.iterations = j.value("iterations", std::size_t{0});
    if (m.weights.size() != kNumEmotions * m.features || m.bias.size() != kNumEmotions)
      throw ValidationError("softmax model: weight dimensions do not match");
    return m;
  }
};

struct SoftmaxHyper {
  double lr = 1.0;  // initial step; the line search adapts it
  std::size_t epochs = 500;
  double l2 = 1e-4;
  double tol = 1e-6;  // stop once the largest gradient entry falls below this
};

struct SoftmaxObjective {
  double loss = 0.0;
  std::vector<double> grad_w;
  std::vector<double> grad_b;
};

// Mean categorical cross-entropy plus (l2 / 2) * ||W||^2 and its gradient.
inline SoftmaxObjective softmax_objective(const SoftmaxModel& m, const FeatureMatrix& x,
                                          const std::vector<Emotion>& y, double l2) {
  SoftmaxObjective out;
  out.grad_w.assign(m.weights.size(), 0.0);
  out.grad_b.assign(kNumEmotions, 0.0);
  const double inv_n = 1.0 / static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto z = m.logits(x.rows[i]);
    const double mx = *std::max_element(z.begin(), z.end());
    double total = 0.0;
    for (double v : z) total += std::exp(v - mx);
    const double log_total = mx + std::log(total);
    const std::size_t yi = index_of(y[i]);
    out.loss += (log_total - z[yi]) * inv_n;
    for (std::size_t c = 0; c < kNumEmotions; ++c) {
      const double r = (std::exp(z[c] - log_total) - (c == yi ? 1.0 : 0.0)) * inv_n;
      out.grad_b[c] += r;
      for (const auto& [j, v] : x.rows[i]) out.grad_w[c * m.features + j] += r * v;
    }
  }
  double sq = 0.0;
  for (std::size_t k = 0; k < m.weights.size(); ++k) {
    sq += m.weights[k] * m.weights[k];
    out.grad_w[k] += l2 * m.weights[k];
  }
  out.loss += 0.5 * l2 * sq;
  return out;
}

namespace softmax_detail {

inline double max_abs(const SoftmaxObjective& o) {
  double g = 0.0;
  for (double v : o.grad_w) g = std::max(g, std::abs(v));
  for (double v : o.grad_b) g = std::max(g, std::abs(v));
  return g;
}

inline double squared_norm(const SoftmaxObjective& o) {
  double g = 0.0;
  for (double v : o.grad_w) g += v * v;
  for (double v : o.grad_b) g += v * v;
  return g;
}

}  // namespace softmax_detail

// Full-batch gradient descent with Armijo backtracking. Accepted steps never
// increase the objective; loss_history records it after every accepted step.
inline SoftmaxModel train_softmax(const FeatureMatrix& x, const std::vector<Emotion>& y, const SoftmaxHyper& hyper,
                                  std::vector<double>* loss_history = nullptr) {
  if (x.cols == 0) throw ValidationError("train_softmax: zero features");
  if (x.size() != y.size() || x.size() == 0) throw ValidationError("train_softmax: features and labels misaligned");
  if (std::set<Emotion>(y.begin(), y.end()).size() < 2)
    throw ValidationError("train_softmax: need at least two distinct labels");

  auto model = SoftmaxModel::zeros(x.cols);
  auto obj = softmax_objective(model, x, y, hyper.l2);
  if (loss_history) loss_history->push_back(obj.loss);
  double step = hyper.lr;
  std::size_t it = 0;
  for (; it < hyper.epochs; ++it) {
    if (!std::isfinite(obj.loss)) throw NumericError("train_softmax: non-finite loss at iteration " + std::to_string(it));
    if (softmax_detail::max_abs(obj) < hyper.tol) break;
    const double g2 = softmax_detail::squared_norm(obj);
    bool accepted = false;
    while (step > 1e-12) {
      SoftmaxModel trial = model;
      for (std::size_t k = 0; k < trial.weights.size(); ++k) trial.weights[k] -= step * obj.grad_w[k];
      for (std::size_t c = 0; c < kNumEmotions; ++c) trial.bias[c] -= step * obj.grad_b[c];
      auto next = softmax_objective(trial, x, y, hyper.l2);
      if (std::isfinite(next.loss) && next.loss <= obj.loss - 1e-4 * step * g2) {
        model = std::move(trial);
        obj = std::move(next);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    if (loss_history) loss_history->push_back(obj.loss);
    step *= 2.0;
  }
  if (!std::isfinite(obj.loss)) throw NumericError("train_softmax: non-finite final loss");
  model.final_loss = obj.loss;
  model.iterations = it;
  return model;
}

}  // namespace emopipe::emoclass

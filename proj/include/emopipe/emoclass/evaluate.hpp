#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/common/strings.hpp"
#include "emopipe/emoclass/emotion.hpp"

namespace emopipe::emoclass {

inline constexpr double kLogClamp = 1e-12;

// Rows are true labels, columns predicted argmax.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, kNumEmotions>, kNumEmotions> counts{};

  void add(Emotion truth, Emotion predicted) { ++counts[index_of(truth)][index_of(predicted)]; }

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& r : counts)
      for (auto v : r) t += v;
    return t;
  }
  std::uint64_t trace() const {
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < kNumEmotions; ++i) t += counts[i][i];
    return t;
  }
  std::uint64_t row_total(std::size_t i) const {
    std::uint64_t t = 0;
    for (auto v : counts[i]) t += v;
    return t;
  }

  // Each nonempty row divided by its total; empty rows stay zero.
  std::array<std::array<double, kNumEmotions>, kNumEmotions> normalized() const {
    std::array<std::array<double, kNumEmotions>, kNumEmotions> out{};
    for (std::size_t i = 0; i < kNumEmotions; ++i) {
      const auto t = row_total(i);
      if (t == 0) continue;
      for (std::size_t j = 0; j < kNumEmotions; ++j)
        out[i][j] = static_cast<double>(counts[i][j]) / static_cast<double>(t);
    }
    return out;
  }

  ConfusionMatrix& operator+=(const ConfusionMatrix& o) {
    for (std::size_t i = 0; i < kNumEmotions; ++i)
      for (std::size_t j = 0; j < kNumEmotions; ++j) counts[i][j] += o.counts[i][j];
    return *this;
  }

  // Row-normalized CSV: true label per row, predicted label per column.
  void write_csv(std::ostream& out) const {
    out << "true\\predicted";
    for (auto n : kEmotionNames) out << ',' << n;
    out << '\n';
    auto norm = normalized();
    for (std::size_t i = 0; i < kNumEmotions; ++i) {
      out << kEmotionNames[i];
      for (std::size_t j = 0; j < kNumEmotions; ++j) out << ',' << str::format_double(norm[i][j]);
      out << '\n';
    }
  }
};

struct Evaluation {
  double loss = 0.0;
  double accuracy = 0.0;
  ConfusionMatrix confusion;
};

// Cross-entropy with probabilities clamped at 1e-12; accuracy over argmax.
inline Evaluation evaluate(const std::vector<EmotionDistribution>& predictions, const std::vector<Emotion>& labels) {
  if (predictions.size() != labels.size())
    throw ValidationError("evaluate: " + std::to_string(predictions.size()) + " predictions for " +
                          std::to_string(labels.size()) + " labels");
  if (labels.empty()) throw ValidationError("evaluate: no examples");
  Evaluation e;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    e.loss -= std::log(std::max(predictions[i][labels[i]], kLogClamp));
    const Emotion pred = predictions[i].argmax();
    hits += pred == labels[i];
    e.confusion.add(labels[i], pred);
  }
  const double n = static_cast<double>(labels.size());
  e.loss /= n;
  e.accuracy = static_cast<double>(hits) / n;
  return e;
}

struct CoarseEvaluation {
  double loss = 0.0;
  double accuracy = 0.0;
};

// Same metrics after collapsing to positive / neutral / negative.
inline CoarseEvaluation evaluate_collapsed(const std::vector<EmotionDistribution>& predictions,
                                           const std::vector<Emotion>& labels) {
  if (predictions.size() != labels.size() || labels.empty())
    throw ValidationError("evaluate_collapsed: predictions and labels misaligned");
  CoarseEvaluation e;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto c = collapse_classes(predictions[i]);
    const int truth = collapse_label(labels[i]);
    const double p = truth == 0 ? c.positive : truth == 1 ? c.neutral : c.negative;
    e.loss -= std::log(std::max(p, kLogClamp));
    hits += c.argmax() == truth;
  }
  e.loss /= static_cast<double>(labels.size());
  e.accuracy = static_cast<double>(hits) / static_cast<double>(labels.size());
  return e;
}

}  // namespace emopipe::emoclass

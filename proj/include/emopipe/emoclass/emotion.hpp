#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "emopipe/common/error.hpp"

namespace emopipe::emoclass {

// Fixed class order; every probability vector and confusion matrix uses it.
enum class Emotion : int { Neutral = 0, Happy, Sad, Anger, Disgust, Surprise, Fear };

inline constexpr std::size_t kNumEmotions = 7;
inline constexpr double kSimplexTolerance = 1e-6;

inline constexpr std::array<std::string_view, kNumEmotions> kEmotionNames = {
    "neutral", "happy", "sad", "anger", "disgust", "surprise", "fear"};

inline std::string_view emotion_name(Emotion e) { return kEmotionNames[static_cast<std::size_t>(e)]; }
inline std::size_t index_of(Emotion e) { return static_cast<std::size_t>(e); }

inline std::optional<Emotion> parse_emotion(std::string_view s) {
  for (std::size_t i = 0; i < kNumEmotions; ++i)
    if (kEmotionNames[i] == s) return static_cast<Emotion>(i);
  return std::nullopt;
}

// Seven-way probability vector in the fixed class order.
struct EmotionDistribution {
  std::array<double, kNumEmotions> p{};

  double operator[](Emotion e) const { return p[index_of(e)]; }
  double& operator[](Emotion e) { return p[index_of(e)]; }

  static EmotionDistribution uniform() {
    EmotionDistribution d;
    d.p.fill(1.0 / kNumEmotions);
    return d;
  }
  static EmotionDistribution one_hot(Emotion e) {
    EmotionDistribution d;
    d[e] = 1.0;
    return d;
  }

  double sum() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
  }

  // Empty optional when valid, otherwise the reason.
  std::optional<std::string> violation(double tol = kSimplexTolerance) const {
    for (std::size_t i = 0; i < kNumEmotions; ++i) {
      if (!std::isfinite(p[i])) return "non-finite probability for " + std::string(kEmotionNames[i]);
      if (p[i] < 0.0) return "negative probability for " + std::string(kEmotionNames[i]);
      if (p[i] > 1.0 + tol) return "probability above 1 for " + std::string(kEmotionNames[i]);
    }
    if (std::abs(sum() - 1.0) > tol) return "probabilities sum to " + std::to_string(sum());
    return std::nullopt;
  }
  bool valid(double tol = kSimplexTolerance) const { return !violation(tol); }

  // Ties resolve to the lowest class index.
  Emotion argmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < kNumEmotions; ++i)
      if (p[i] > p[best]) best = i;
    return static_cast<Emotion>(best);
  }

  friend bool operator==(const EmotionDistribution&, const EmotionDistribution&) = default;
};

// Positive / neutral / negative view used for the coarse benchmark.
struct ThreeClassDistribution {
  double positive = 0.0;
  double neutral = 0.0;
  double negative = 0.0;

  // 0 positive, 1 neutral, 2 negative; ties to the lowest index.
  int argmax() const {
    int best = 0;
    if (neutral > positive) best = 1;
    if (negative > (best == 0 ? positive : neutral)) best = 2;
    return best;
  }
};

inline ThreeClassDistribution collapse_classes(const EmotionDistribution& d) {
  using E = Emotion;
  return {d[E::Happy], d[E::Neutral] + d[E::Surprise], d[E::Sad] + d[E::Anger] + d[E::Fear] + d[E::Disgust]};
}

inline int collapse_label(Emotion e) {
  switch (e) {
    case Emotion::Happy: return 0;
    case Emotion::Neutral:
    case Emotion::Surprise: return 1;
    default: return 2;
  }
}

}  // namespace emopipe::emoclass

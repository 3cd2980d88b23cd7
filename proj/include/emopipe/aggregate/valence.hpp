#pragma once

#include <cmath>
#include <optional>
#include <string_view>

#include "emopipe/common/error.hpp"
#include "emopipe/emoclass/emotion.hpp"

namespace emopipe::aggregate {

using emoclass::Emotion;
using emoclass::EmotionDistribution;

// happy - (sad + anger + disgust + fear); neutral and surprise carry no sign.
inline double valence(const EmotionDistribution& d) {
  return d[Emotion::Happy] - (d[Emotion::Sad] + d[Emotion::Anger] + d[Emotion::Disgust] + d[Emotion::Fear]);
}

enum class Weighting { follower, equal };

inline std::optional<Weighting> parse_weighting(std::string_view s) {
  if (s == "follower") return Weighting::follower;
  if (s == "equal") return Weighting::equal;
  return std::nullopt;
}

inline std::string_view to_string(Weighting w) { return w == Weighting::follower ? "follower" : "equal"; }

// 1 + log(1 + followers). Natural log unless another base is given.
inline double follower_weight(double follower_count, double log_base = 0.0) {
  if (!(follower_count >= 0.0)) throw ValidationError("follower count must be nonnegative");
  const double l = std::log1p(follower_count);
  return 1.0 + (log_base > 0.0 ? l / std::log(log_base) : l);
}

inline double message_weight(Weighting w, double follower_count, double log_base = 0.0) {
  return w == Weighting::equal ? 1.0 : follower_weight(follower_count, log_base);
}

}  // namespace emopipe::aggregate

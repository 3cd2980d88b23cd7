#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emopipe/common/date.hpp"
#include "emopipe/common/error.hpp"
#include "emopipe/common/strings.hpp"

namespace emopipe::corpus {

enum class SelfTag { bullish, bearish, none };
enum class Experience { novice, intermediate, professional, unknown };
enum class Approach { fundamental, technical, unknown };
enum class Horizon { short_term, long_term, unknown };

// One social-media post as ingested.
struct RawMessage {
  std::string message_id;
  std::string user_id;
  std::int64_t utc_minutes = 0;  // instant, minute precision
  LocalMinute local;             // US Eastern wall clock
  std::string body;
  std::vector<std::string> cashtags;  // uppercase alphanumeric
  SelfTag self_tag = SelfTag::none;
  std::uint64_t follower_count = 0;
  std::uint64_t likes = 0;
  Experience user_experience = Experience::unknown;
  Approach user_approach = Approach::unknown;
  Horizon user_horizon = Horizon::unknown;
  // Platform-computed sentiment in [-1, 1], when the source provides one.
  std::optional<double> platform_sentiment;
};

inline SelfTag parse_self_tag(std::string_view s) {
  if (s == "bullish" || s == "Bullish") return SelfTag::bullish;
  if (s == "bearish" || s == "Bearish") return SelfTag::bearish;
  if (s.empty() || s == "none" || s == "null" || s == "unclassified") return SelfTag::none;
  throw ValidationError("bad self_tag '" + std::string(s) + "'");
}

inline std::string_view to_string(SelfTag t) {
  switch (t) {
    case SelfTag::bullish: return "bullish";
    case SelfTag::bearish: return "bearish";
    default: return "none";
  }
}

// Numeric encoding used for the sentiment aggregate.
inline double self_tag_value(SelfTag t) {
  return t == SelfTag::bullish ? 1.0 : t == SelfTag::bearish ? -1.0 : 0.0;
}

inline Experience parse_experience(std::string_view s) {
  if (s == "novice") return Experience::novice;
  if (s == "intermediate") return Experience::intermediate;
  if (s == "professional") return Experience::professional;
  return Experience::unknown;
}

inline Approach parse_approach(std::string_view s) {
  if (s == "fundamental" || s == "value") return Approach::fundamental;
  if (s == "technical" || s == "momentum") return Approach::technical;
  return Approach::unknown;
}

inline Horizon parse_horizon(std::string_view s) {
  if (s == "short_term") return Horizon::short_term;
  if (s == "long_term") return Horizon::long_term;
  return Horizon::unknown;
}

inline bool valid_cashtag(std::string_view t) {
  if (t.empty()) return false;
  for (char c : t)
    if (!(str::is_digit(c) || (c >= 'A' && c <= 'Z') || c == '.')) return false;
  return true;
}

}  // namespace emopipe::corpus

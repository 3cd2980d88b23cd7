#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "emopipe/aggregate/firm_session.hpp"
#include "emopipe/common/csv.hpp"
#include "emopipe/common/date.hpp"
#include "emopipe/common/error.hpp"
#include "emopipe/common/metadata.hpp"
#include "emopipe/common/strings.hpp"

namespace emopipe::aggregate {

inline constexpr std::size_t kDefaultEventWindow = 90;

struct EventPoint {
  Date date;
  double share = 0.0;
  std::optional<double> rolling_mean;
  std::optional<double> rolling_sd;
  std::optional<double> z;
};

struct EmotionSeries {
  std::string ticker;
  Emotion emotion = Emotion::Happy;
  std::size_t window = kDefaultEventWindow;
  std::vector<EventPoint> points;
};

// Trailing statistics over the `window` observations strictly before each
// day. SD is the sample SD (n - 1); a zero SD leaves z missing.
inline std::vector<EventPoint> rolling_zscores(const std::vector<std::pair<Date, double>>& shares, std::size_t window) {
  if (window < 2) throw ValidationError("event-study window must be at least 2");
  for (std::size_t i = 1; i < shares.size(); ++i)
    if (!(shares[i - 1].first < shares[i].first)) throw ValidationError("event-study series must be strictly date-sorted");
  std::vector<EventPoint> out;
  out.reserve(shares.size());
  for (std::size_t i = 0; i < shares.size(); ++i) {
    EventPoint p{shares[i].first, shares[i].second, {}, {}, {}};
    if (i >= window) {
      const auto first = shares.begin() + static_cast<std::ptrdiff_t>(i - window);
      const auto last = shares.begin() + static_cast<std::ptrdiff_t>(i);
      double sum = 0.0;
      double lo = first->second, hi = first->second;
      for (auto it = first; it != last; ++it) {
        sum += it->second;
        lo = std::min(lo, it->second);
        hi = std::max(hi, it->second);
      }
      const double mean = sum / static_cast<double>(window);
      double ss = 0.0;
      for (auto it = first; it != last; ++it) ss += (it->second - mean) * (it->second - mean);
      const double sd = lo == hi ? 0.0 : std::sqrt(ss / static_cast<double>(window - 1));
      p.rolling_mean = mean;
      p.rolling_sd = sd;
      if (sd > 0.0) p.z = (p.share - mean) / sd;
    }
    out.push_back(p);
  }
  return out;
}

// Daily share of one emotion for one ticker, taken from the chosen session's
// aggregated means.
inline EmotionSeries emotion_time_series(const std::vector<FirmSessionRecord>& records, const std::string& ticker,
                                         Emotion emotion, std::size_t window = kDefaultEventWindow,
                                         corpus::Session session = corpus::Session::premarket) {
  EmotionSeries s;
  s.ticker = ticker;
  s.emotion = emotion;
  s.window = window;
  std::vector<std::pair<Date, double>> shares;
  for (const auto& r : records)
    if (r.key.ticker == ticker && r.key.session == session) shares.emplace_back(r.key.trade_date, r.mean[emotion]);
  std::sort(shares.begin(), shares.end());
  s.points = rolling_zscores(shares, window);
  return s;
}

inline void write_event_study(std::ostream& out, const std::vector<EmotionSeries>& series,
                              const RunMetadata* meta = nullptr) {
  if (meta) meta->write_comment(out);
  csv::write_row(out, {"ticker", "emotion", "date", "share", "rolling_mean", "rolling_sd", "z"});
  auto opt = [](const std::optional<double>& v) { return v ? str::format_double(*v) : std::string(); };
  for (const auto& s : series)
    for (const auto& p : s.points)
      csv::write_row(out, {s.ticker, std::string(emoclass::emotion_name(s.emotion)), format_date(p.date), str::format_double(p.share), opt(p.rolling_mean),
                           opt(p.rolling_sd), opt(p.z)});
}

}  // namespace emopipe::aggregate

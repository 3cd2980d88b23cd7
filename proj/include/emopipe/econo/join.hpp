#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "emopipe/aggregate/firm_session.hpp"
#include "emopipe/econo/panel.hpp"

namespace emopipe::econo {

struct JoinStats {
  std::size_t matched_rows = 0;
  std::size_t unmatched_sessions = 0;  // aggregates with no panel row
};

// Adds one session's aggregates to the panel, keyed on (firm_id = ticker, date):
// n_messages, the seven emotion means, valence, sentiment and, when present,
// n_/valence_/sentiment_ per content split. Rows without messages stay missing.
inline JoinStats attach_emotions(Panel& p, const std::vector<aggregate::FirmSessionRecord>& records,
                                 corpus::Session session = corpus::Session::premarket) {
  std::map<std::pair<std::string, Date>, const aggregate::FirmSessionRecord*> by_key;
  bool splits = false;
  for (const auto& r : records)
    if (r.key.session == session) {
      by_key[{r.key.ticker, r.key.trade_date}] = &r;
      splits = splits || r.splits.has_value();
    }
  const std::size_t n = p.rows();
  std::vector<std::string> names = {"n_messages"};
  for (auto e : emoclass::kEmotionNames) names.emplace_back(e);
  names.insert(names.end(), {"valence", "sentiment"});
  if (splits)
    for (auto s : aggregate::kSplitNames)
      for (auto f : {"n_", "valence_", "sentiment_"}) names.push_back(f + std::string(s));
  std::vector<std::vector<double>> cols(names.size(), std::vector<double>(n, kNaN));

  JoinStats stats;
  std::size_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = by_key.find({p.firm[i], p.date[i]});
    if (it == by_key.end()) continue;
    const auto& r = *it->second;
    ++used;
    std::size_t c = 0;
    cols[c++][i] = static_cast<double>(r.n);
    for (double v : r.mean.p) cols[c++][i] = v;
    cols[c++][i] = r.valence;
    cols[c++][i] = r.sentiment;
    if (splits && r.splits)
      for (const auto& s : *r.splits) {
        cols[c++][i] = static_cast<double>(s.n);
        cols[c++][i] = s.valence;
        cols[c++][i] = s.sentiment;
      }
  }
  stats.matched_rows = used;
  stats.unmatched_sessions = by_key.size() - used;
  for (std::size_t k = 0; k < names.size(); ++k) p.set_column(names[k], std::move(cols[k]));
  return stats;
}

}  // namespace emopipe::econo

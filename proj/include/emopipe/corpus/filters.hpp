#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "emopipe/common/csv.hpp"
#include "emopipe/corpus/message.hpp"
#include "emopipe/corpus/session.hpp"

namespace emopipe::corpus {

// Messages that mention exactly one ticker.
inline std::vector<RawMessage> filter_single_ticker(const std::vector<RawMessage>& messages) {
  std::vector<RawMessage> out;
  for (const auto& m : messages)
    if (m.cashtags.size() == 1) out.push_back(m);
  return out;
}

inline constexpr std::size_t kAutomatedThreshold = 100;

using UserText = std::pair<std::string, std::string>;

// (user, normalized body) pairs posted more than `threshold` times over the
// whole corpus. `normalized_body` is parallel to `messages`.
inline std::set<UserText> detect_automated(const std::vector<RawMessage>& messages,
                                           const std::vector<std::string>& normalized_body,
                                           std::size_t threshold = kAutomatedThreshold) {
  if (messages.size() != normalized_body.size())
    throw ValidationError("detect_automated: messages and normalized bodies differ in length");
  std::map<UserText, std::size_t> counts;
  for (std::size_t i = 0; i < messages.size(); ++i) ++counts[{messages[i].user_id, normalized_body[i]}];
  std::set<UserText> flagged;
  for (const auto& [key, n] : counts)
    if (n > threshold) flagged.insert(key);
  return flagged;
}

// Drops messages matching a flagged pair. Returns the surviving indices.
inline std::vector<std::size_t> drop_automated(const std::vector<RawMessage>& messages,
                                               const std::vector<std::string>& normalized_body,
                                               const std::set<UserText>& flagged) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < messages.size(); ++i)
    if (!flagged.count({messages[i].user_id, normalized_body[i]})) keep.push_back(i);
  return keep;
}

inline constexpr std::size_t kMinSessionMessages = 10;

// Removes every group holding fewer than `min_count` items.
template <typename T>
std::map<SessionKey, std::vector<T>> enforce_min_activity(std::map<SessionKey, std::vector<T>> groups,
                                                          std::size_t min_count = kMinSessionMessages) {
  std::erase_if(groups, [&](const auto& kv) { return kv.second.size() < min_count; });
  return groups;
}

// Itemized survivors after each restriction stage, in execution order.
class RestrictionReport {
 public:
  void record(std::string stage, std::size_t surviving) { rows_.emplace_back(std::move(stage), surviving); }

  const std::vector<std::pair<std::string, std::size_t>>& rows() const { return rows_; }

  bool monotone() const {
    for (std::size_t i = 1; i < rows_.size(); ++i)
      if (rows_[i].second > rows_[i - 1].second) return false;
    return true;
  }

  void write_csv(std::ostream& out) const {
    csv::write_row(out, {"stage", "count"});
    for (const auto& [stage, n] : rows_) csv::write_row(out, {stage, std::to_string(n)});
  }

 private:
  std::vector<std::pair<std::string, std::size_t>> rows_;
};

inline constexpr const char* kStageAll = "All Messages";
inline constexpr const char* kStageSingleTicker = "Single Ticker";
inline constexpr const char* kStageNotAutomated = "Not Automated";
inline constexpr const char* kStageSecurity = "Active, Common Ordinary Shares, Traded on US Exchanges";
inline constexpr const char* kStageMinActivity = "At Least 10 Messages during Non-Market/Market Hours";

}  // namespace emopipe::corpus

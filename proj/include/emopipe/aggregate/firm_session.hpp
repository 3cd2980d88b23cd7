#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "emopipe/aggregate/content.hpp"
#include "emopipe/aggregate/valence.hpp"
#include "emopipe/common/csv.hpp"
#include "emopipe/common/error.hpp"
#include "emopipe/common/metadata.hpp"
#include "emopipe/common/parallel.hpp"
#include "emopipe/common/strings.hpp"
#include "emopipe/corpus/calendar.hpp"
#include "emopipe/corpus/filters.hpp"
#include "emopipe/corpus/message.hpp"
#include "emopipe/corpus/session.hpp"

namespace emopipe::aggregate {

using corpus::SessionKey;
using PredictionMap = std::unordered_map<std::string, EmotionDistribution>;

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

enum class SentimentSource { self_tag, platform };

inline std::optional<SentimentSource> parse_sentiment_source(std::string_view s) {
  if (s == "self_tag") return SentimentSource::self_tag;
  if (s == "platform") return SentimentSource::platform;
  return std::nullopt;
}

inline std::string_view to_string(SentimentSource s) { return s == SentimentSource::self_tag ? "self_tag" : "platform"; }

// What aggregation needs from one message.
struct SessionMessage {
  std::string message_id;
  double follower_count = 0.0;
  double self_tag = 0.0;  // +1 bullish, -1 bearish, 0 none
  std::optional<double> platform_sentiment;
  std::optional<ContentTag> content;
};

inline SessionMessage session_message(const corpus::RawMessage& m) {
  return {m.message_id, static_cast<double>(m.follower_count), corpus::self_tag_value(m.self_tag),
          m.platform_sentiment, std::nullopt};
}

// Marginal content subsets: each message lands in one chat type and one info type.
enum class Split { finance, chat, original, disseminating };
inline constexpr std::size_t kNumSplits = 4;
inline constexpr std::array<std::string_view, kNumSplits> kSplitNames = {"finance", "chat", "original",
                                                                         "disseminating"};

struct SplitAggregate {
  std::size_t n = 0;
  double valence = kMissing;
  double sentiment = kMissing;
};

struct FirmSessionRecord {
  SessionKey key;
  std::size_t n = 0;
  EmotionDistribution mean;
  double valence = 0.0;
  double sentiment = 0.0;
  std::optional<std::array<SplitAggregate, kNumSplits>> splits;
};

struct AggregateOptions {
  Weighting weighting = Weighting::follower;
  SentimentSource sentiment = SentimentSource::self_tag;
  double log_base = 0.0;  // 0 = natural log
};

namespace detail {

struct Accumulator {
  std::array<double, emoclass::kNumEmotions> sum{};
  double weight = 0.0;
  double sentiment = 0.0;
  std::size_t n = 0;

  void add(double w, const EmotionDistribution& p, double s) {
    for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += w * p.p[c];
    weight += w;
    sentiment += w * s;
    ++n;
  }
  EmotionDistribution mean() const {
    EmotionDistribution d;
    for (std::size_t c = 0; c < sum.size(); ++c) d.p[c] = sum[c] / weight;
    return d;
  }
};

inline double sentiment_value(const SessionMessage& m, SentimentSource src) {
  if (src == SentimentSource::platform && m.platform_sentiment) return *m.platform_sentiment;
  return m.self_tag;  // fallback when no platform score is present
}

}  // namespace detail

// Weighted mean distribution over one session's messages, reduced in
// message_id order so results are bitwise reproducible.
inline FirmSessionRecord aggregate_firm_session(const SessionKey& key, std::vector<SessionMessage> messages,
                                                const PredictionMap& predictions, const AggregateOptions& opt = {}) {
  if (messages.empty()) throw ValidationError("no messages for session " + key.ticker);
  std::vector<std::string> missing;
  for (const auto& m : messages)
    if (!predictions.count(m.message_id)) missing.push_back(m.message_id);
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    throw ValidationError("messages without predictions: " + str::join(missing, ", "));
  }
  std::sort(messages.begin(), messages.end(),
            [](const SessionMessage& a, const SessionMessage& b) { return a.message_id < b.message_id; });

  detail::Accumulator all;
  std::array<detail::Accumulator, kNumSplits> part;
  bool tagged = true;
  for (const auto& m : messages) {
    const double w = message_weight(opt.weighting, m.follower_count, opt.log_base);
    const auto& p = predictions.at(m.message_id);
    const double s = detail::sentiment_value(m, opt.sentiment);
    all.add(w, p, s);
    if (!m.content) {
      tagged = false;
      continue;
    }
    part[m.content->chat_type == ChatType::finance ? 0 : 1].add(w, p, s);
    part[m.content->info_type == InfoType::original ? 2 : 3].add(w, p, s);
  }

  FirmSessionRecord r;
  r.key = key;
  r.n = all.n;
  r.mean = all.mean();
  r.valence = valence(r.mean);
  r.sentiment = all.sentiment / all.weight;
  if (tagged) {
    std::array<SplitAggregate, kNumSplits> splits;
    for (std::size_t k = 0; k < kNumSplits; ++k) {
      splits[k].n = part[k].n;
      if (part[k].n == 0) continue;
      splits[k].valence = valence(part[k].mean());
      splits[k].sentiment = part[k].sentiment / part[k].weight;
    }
    r.splits = splits;
  }
  return r;
}

struct BuildResult {
  std::vector<FirmSessionRecord> records;  // sorted by key
  std::size_t out_of_calendar = 0;         // messages whose timestamp falls outside the calendar
  std::size_t sessions_below_minimum = 0;
};

// Groups messages by (ticker, trade date, session), drops sessions below the
// activity floor and aggregates the rest. `content` is parallel to `messages`
// when given.
inline BuildResult build_firm_sessions(const std::vector<corpus::RawMessage>& messages,
                                       const PredictionMap& predictions, const corpus::TradingCalendar& calendar,
                                       const AggregateOptions& opt = {},
                                       const std::vector<ContentTag>* content = nullptr,
                                       std::size_t min_messages = corpus::kMinSessionMessages) {
  if (content && content->size() != messages.size())
    throw ValidationError("content tags do not align with messages");
  BuildResult out;
  std::map<SessionKey, std::vector<SessionMessage>> groups;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const auto& m = messages[i];
    if (m.cashtags.empty()) throw ValidationError("message " + m.message_id + " has no cashtag");
    corpus::SessionSlot slot;
    try {
      slot = corpus::assign_session(m.local, calendar);
    } catch (const corpus::OutOfRangeError&) {
      ++out.out_of_calendar;
      continue;
    }
    auto sm = session_message(m);
    if (content) sm.content = (*content)[i];
    groups[{m.cashtags.front(), slot.trade_date, slot.session}].push_back(std::move(sm));
  }
  const std::size_t before = groups.size();
  groups = corpus::enforce_min_activity(std::move(groups), min_messages);
  out.sessions_below_minimum = before - groups.size();

  std::vector<std::string> missing;
  for (const auto& [key, msgs] : groups)
    for (const auto& m : msgs)
      if (!predictions.count(m.message_id)) missing.push_back(m.message_id);
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    const std::size_t total = missing.size();
    if (total > 20) missing.resize(20);
    throw ValidationError(std::to_string(total) + " messages without predictions: " + str::join(missing, ", ") +
                          (total > 20 ? ", ..." : ""));
  }

  std::vector<const std::pair<const SessionKey, std::vector<SessionMessage>>*> items;
  for (const auto& kv : groups) items.push_back(&kv);
  out.records.resize(items.size());
  parallel_for(items.size(),
               [&](std::size_t i) { out.records[i] = aggregate_firm_session(items[i]->first, items[i]->second, predictions, opt); });
  return out;
}

// ticker,date,session,n,neutral..fear,valence,sentiment[,n_<split>,valence_<split>,sentiment_<split>...]
inline std::vector<std::string> firm_session_header(bool with_splits) {
  std::vector<std::string> h = {"ticker", "date", "session", "n"};
  for (auto name : emoclass::kEmotionNames) h.emplace_back(name);
  h.insert(h.end(), {"valence", "sentiment"});
  if (with_splits)
    for (auto s : kSplitNames)
      for (auto f : {"n_", "valence_", "sentiment_"}) h.push_back(f + std::string(s));
  return h;
}

inline void write_firm_sessions(std::ostream& out, const std::vector<FirmSessionRecord>& records,
                                const RunMetadata* meta = nullptr) {
  if (meta) meta->write_comment(out);
  const bool with_splits = !records.empty() && std::all_of(records.begin(), records.end(),
                                                           [](const auto& r) { return r.splits.has_value(); });
  csv::write_row(out, firm_session_header(with_splits));
  for (const auto& r : records) {
    std::vector<std::string> row = {r.key.ticker, format_date(r.key.trade_date), std::string(corpus::to_string(r.key.session)),
                                    std::to_string(r.n)};
    for (double p : r.mean.p) row.push_back(str::format_double(p));
    row.push_back(str::format_double(r.valence));
    row.push_back(str::format_double(r.sentiment));
    if (with_splits)
      for (const auto& s : *r.splits) {
        row.push_back(std::to_string(s.n));
        row.push_back(str::format_double(s.valence));
        row.push_back(str::format_double(s.sentiment));
      }
    csv::write_row(out, row);
  }
}

inline std::vector<FirmSessionRecord> read_firm_sessions(std::istream& in, const std::string& source) {
  csv::Reader reader(in, source);
  if (!reader.read_header()) throw ValidationError(source + ": empty firm-session file");
  const auto base = firm_session_header(false);
  std::vector<std::size_t> col;
  for (const auto& name : base) col.push_back(reader.require_column(name));
  std::vector<std::size_t> split_col;
  const auto full = firm_session_header(true);
  for (std::size_t i = base.size(); i < full.size(); ++i)
    if (auto c = reader.column(full[i])) split_col.push_back(*c);
  const bool with_splits = split_col.size() == full.size() - base.size();

  auto number = [&](const std::string& v) {
    if (v.empty()) return kMissing;
    auto d = str::parse_double(v);
    if (!d) throw ParseError(source, reader.line(), "bad number '" + v + "'");
    return *d;
  };
  auto count = [&](const std::string& v) {
    auto n = str::parse_int(v);
    if (!n || *n < 0) throw ParseError(source, reader.line(), "bad count '" + v + "'");
    return static_cast<std::size_t>(*n);
  };

  std::vector<FirmSessionRecord> out;
  std::vector<std::string> row;
  while (reader.next(row)) {
    auto field = [&](std::size_t c) -> const std::string& {
      if (c >= row.size()) throw ParseError(source, reader.line(), "too few columns");
      return row[c];
    };
    FirmSessionRecord r;
    try {
      r.key.ticker = field(col[0]);
      r.key.trade_date = parse_date(field(col[1]));
      r.key.session = corpus::parse_session(field(col[2]));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(source, reader.line(), e.what());
    }
    r.n = count(field(col[3]));
    for (std::size_t c = 0; c < emoclass::kNumEmotions; ++c) r.mean.p[c] = number(field(col[4 + c]));
    r.valence = number(field(col[11]));
    r.sentiment = number(field(col[12]));
    if (with_splits) {
      std::array<SplitAggregate, kNumSplits> s;
      for (std::size_t k = 0; k < kNumSplits; ++k) {
        s[k].n = count(field(split_col[3 * k]));
        s[k].valence = number(field(split_col[3 * k + 1]));
        s[k].sentiment = number(field(split_col[3 * k + 2]));
      }
      r.splits = s;
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<FirmSessionRecord> load_firm_sessions(const std::string& path) {
  auto in = csv::open_input(path);
  return read_firm_sessions(in, path);
}

}  // namespace emopipe::aggregate

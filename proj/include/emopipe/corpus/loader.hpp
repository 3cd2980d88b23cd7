#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "emopipe/common/csv.hpp"
#include "emopipe/common/date.hpp"
#include "emopipe/common/error.hpp"
#include "emopipe/corpus/message.hpp"
#include "json.hpp"

namespace emopipe::corpus {

enum class MessageFormat { jsonl, csv };

inline MessageFormat parse_message_format(std::string_view s) {
  if (s == "jsonl") return MessageFormat::jsonl;
  if (s == "csv") return MessageFormat::csv;
  throw ValidationError("unknown message format '" + std::string(s) + "' (expected jsonl or csv)");
}

struct LoadOptions {
  bool strict = false;
};

struct LoadResult {
  std::vector<RawMessage> messages;
  std::size_t skipped = 0;     // malformed records (lenient mode)
  std::size_t duplicates = 0;  // repeated message_id, first occurrence kept
  std::vector<std::string> warnings;
};

namespace detail {

inline std::uint64_t parse_count(const std::string& v, const char* name) {
  if (v.empty()) return 0;
  auto n = str::parse_int(v);
  if (!n || *n < 0) throw ValidationError(std::string("field '") + name + "' must be a nonnegative integer");
  return static_cast<std::uint64_t>(*n);
}

inline void finish_message(RawMessage& m, const std::string& timestamp) {
  if (m.message_id.empty()) throw ValidationError("empty message_id");
  m.utc_minutes = parse_rfc3339_utc_minutes(timestamp);
  m.local = to_us_eastern(m.utc_minutes);
  for (auto& tag : m.cashtags) {
    if (!tag.empty() && tag[0] == '$') tag.erase(0, 1);
    tag = str::to_upper(tag);
    if (!valid_cashtag(tag)) throw ValidationError("bad cashtag '" + tag + "'");
  }
}

inline RawMessage message_from_json(const nlohmann::json& j) {
  auto require = [&](const char* key) -> const nlohmann::json& {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) throw ValidationError(std::string("missing required field '") + key + "'");
    return *it;
  };
  auto text = [&](const char* key) -> std::string {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return {};
    return it->is_string() ? it->get<std::string>() : it->dump();
  };
  auto count = [&](const char* key) -> std::uint64_t {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return 0;
    if (it->is_number_integer() || it->is_number_unsigned()) {
      auto v = it->get<long long>();
      if (v < 0) throw ValidationError(std::string("field '") + key + "' must be nonnegative");
      return static_cast<std::uint64_t>(v);
    }
    if (it->is_string()) return parse_count(it->get<std::string>(), key);
    throw ValidationError(std::string("field '") + key + "' must be an integer");
  };

  RawMessage m;
  const auto& id = require("message_id");
  m.message_id = id.is_string() ? id.get<std::string>() : id.dump();
  const auto& user = require("user_id");
  m.user_id = user.is_string() ? user.get<std::string>() : user.dump();
  const auto& ts = require("timestamp");
  if (!ts.is_string()) throw ValidationError("field 'timestamp' must be a string");
  const auto& body = require("body");
  if (!body.is_string()) throw ValidationError("field 'body' must be a string");
  m.body = body.get<std::string>();
  const auto& tags = require("cashtags");
  if (!tags.is_array()) throw ValidationError("field 'cashtags' must be an array");
  for (const auto& t : tags) {
    if (!t.is_string()) throw ValidationError("cashtags must be strings");
    m.cashtags.push_back(t.get<std::string>());
  }
  m.self_tag = parse_self_tag(text("self_tag"));
  m.follower_count = count("follower_count");
  m.likes = count("likes");
  m.user_experience = parse_experience(text("user_experience"));
  m.user_approach = parse_approach(text("user_approach"));
  m.user_horizon = parse_horizon(text("user_horizon"));
  if (auto it = j.find("sentiment_score"); it != j.end() && it->is_number()) m.platform_sentiment = it->get<double>();
  finish_message(m, ts.get<std::string>());
  return m;
}

inline void accept(LoadResult& result, std::unordered_set<std::string>& seen, RawMessage m,
                   const std::string& source, std::size_t line) {
  if (!seen.insert(m.message_id).second) {
    ++result.duplicates;
    result.warnings.push_back(source + ":" + std::to_string(line) + ": duplicate message_id '" + m.message_id +
                              "' ignored");
    return;
  }
  result.messages.push_back(std::move(m));
}

}  // namespace detail

inline LoadResult load_messages_jsonl(std::istream& in, const std::string& source, const LoadOptions& opts = {}) {
  LoadResult result;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (str::trim(line).empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      if (j.is_object() && j.contains("_meta")) continue;
      if (!j.is_object()) throw ValidationError("record is not a JSON object");
      detail::accept(result, seen, detail::message_from_json(j), source, line_no);
    } catch (const std::exception& e) {
      if (opts.strict) throw ParseError(source, line_no, e.what());
      ++result.skipped;
      result.warnings.push_back(source + ":" + std::to_string(line_no) + ": skipped: " + e.what());
    }
  }
  return result;
}

// CSV variant: same column names; cashtags separated by '|' or spaces.
inline LoadResult load_messages_csv(std::istream& in, const std::string& source, const LoadOptions& opts = {}) {
  LoadResult result;
  std::unordered_set<std::string> seen;
  csv::Reader reader(in, source);
  if (!reader.read_header()) return result;
  for (const char* col : {"message_id", "user_id", "timestamp", "body", "cashtags"}) reader.require_column(col);
  std::vector<std::string> row;
  while (reader.next(row)) {
    try {
      if (row.size() != reader.header().size()) throw ValidationError("wrong number of fields");
      nlohmann::json j = nlohmann::json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        const auto& name = reader.header()[i];
        if (name == "cashtags") {
          auto tags = nlohmann::json::array();
          std::string spaced = row[i];
          for (char& c : spaced)
            if (c == '|') c = ' ';
          for (auto& t : str::split_ws(spaced)) tags.push_back(t);
          j[name] = tags;
        } else if (name == "sentiment_score") {
          if (auto v = str::parse_double(row[i])) j[name] = *v;
        } else if (!(row[i].empty() && (name == "message_id" || name == "user_id" || name == "timestamp"))) {
          j[name] = row[i];
        }
      }
      detail::accept(result, seen, detail::message_from_json(j), source, reader.line());
    } catch (const std::exception& e) {
      if (opts.strict) throw ParseError(source, reader.line(), e.what());
      ++result.skipped;
      result.warnings.push_back(source + ":" + std::to_string(reader.line()) + ": skipped: " + e.what());
    }
  }
  return result;
}

inline LoadResult load_messages(const std::string& path, MessageFormat format, const LoadOptions& opts = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read messages file '" + path + "'");
  return format == MessageFormat::jsonl ? load_messages_jsonl(in, path, opts) : load_messages_csv(in, path, opts);
}

inline nlohmann::ordered_json to_json(const RawMessage& m) {
  nlohmann::ordered_json j;
  j["message_id"] = m.message_id;
  j["user_id"] = m.user_id;
  std::int64_t local = m.utc_minutes + us_eastern_offset(m.utc_minutes);
  int off = static_cast<int>(local - m.utc_minutes);
  char tz[8];
  std::snprintf(tz, sizeof tz, "%c%02d:%02d", off < 0 ? '-' : '+', std::abs(off) / 60, std::abs(off) % 60);
  j["timestamp"] = format_local(m.local) + ":00" + tz;
  j["body"] = m.body;
  j["cashtags"] = m.cashtags;
  j["self_tag"] = to_string(m.self_tag);
  j["follower_count"] = m.follower_count;
  j["likes"] = m.likes;
  static constexpr const char* kExp[] = {"novice", "intermediate", "professional", "unknown"};
  static constexpr const char* kApp[] = {"fundamental", "technical", "unknown"};
  static constexpr const char* kHor[] = {"short_term", "long_term", "unknown"};
  j["user_experience"] = kExp[static_cast<int>(m.user_experience)];
  j["user_approach"] = kApp[static_cast<int>(m.user_approach)];
  j["user_horizon"] = kHor[static_cast<int>(m.user_horizon)];
  if (m.platform_sentiment) j["sentiment_score"] = *m.platform_sentiment;
  return j;
}

}  // namespace emopipe::corpus

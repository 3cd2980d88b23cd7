#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "emopipe/common/strings.hpp"
#include "emopipe/textprep/artifacts.hpp"
#include "emopipe/textprep/contractions.hpp"
#include "emopipe/textprep/lexer.hpp"
#include "emopipe/textprep/lexicon.hpp"
#include "emopipe/textprep/placeholders.hpp"
#include "emopipe/textprep/symspell.hpp"
#include "json.hpp"

namespace emopipe::textprep {

struct CleanMessage {
  std::string message_id;
  std::vector<std::string> tokens;
  bool has_hyperlink = false;
  bool is_retweet = false;
  std::string normalized_text;  // tokens joined by single spaces

  friend bool operator==(const CleanMessage&, const CleanMessage&) = default;
};

// Immutable after loading; share across threads freely.
struct Resources {
  FrequencyDictionary dictionary;
  EmoLexicon lexicon;
  ContractionTable contractions;
  PlaceholderSets names;
};

// Repost markers: "rt @user", "rt: ...", or a post opening with a quoted mention.
inline bool is_retweet_text(std::string_view raw) {
  auto t = str::to_lower(str::trim(raw));
  return str::starts_with(t, "rt @") || str::starts_with(t, "rt:") || str::starts_with(t, "\"@") ||
         str::starts_with(t, "\xE2\x80\x9C@");  // U+201C
}

namespace detail {

inline std::string_view drop_retweet_marker(std::string_view raw) {
  auto t = str::trim(raw);
  if (t.size() >= 3 && (t[0] == 'r' || t[0] == 'R') && (t[1] == 't' || t[1] == 'T') && (t[2] == ' ' || t[2] == ':'))
    return t.substr(3);
  return t;
}

}  // namespace detail

// Dictionary repair for one lowercase alphabetic token that is not a known
// word or name: segmentation into dictionary words first ("ilike" -> "i like"),
// spell correction otherwise.
inline std::vector<std::string> repair_token(const std::string& token, const Resources& r) {
  auto parts = segment_word(token, r.dictionary);
  if (parts.size() > 1) return parts;
  return {correct_spelling(token, r.dictionary)};
}

// strip -> lowercase -> contractions -> lex -> segment / spell-correct -> placeholders.
inline CleanMessage normalize(std::string_view text, const Resources& r, std::string message_id = {}) {
  CleanMessage out;
  out.message_id = std::move(message_id);
  out.is_retweet = is_retweet_text(text);
  std::string_view body = out.is_retweet ? detail::drop_retweet_marker(text) : str::trim(text);
  auto stripped = strip_artifacts(body);
  out.has_hyperlink = stripped.has_hyperlink;
  const std::string lowered = str::to_lower(stripped.text);
  const std::string expanded = r.contractions.expand(lowered);
  std::vector<std::string> repaired;
  for (auto& tok : lex(expanded, r.lexicon)) {
    const bool repairable = is_lower_alpha(tok) && !r.dictionary.contains(tok) && !r.lexicon.contains(tok) &&
                            !r.names.tickers.count(tok) && !r.names.companies.count(tok) &&
                            !r.names.user_handles.count(tok);
    if (!repairable) {
      repaired.push_back(std::move(tok));
      continue;
    }
    for (auto& part : repair_token(tok, r)) repaired.push_back(std::move(part));
  }
  out.tokens = substitute_placeholders(repaired, r.names, r.dictionary, r.lexicon);
  out.normalized_text = str::join(out.tokens, " ");
  return out;
}

inline nlohmann::ordered_json to_json(const CleanMessage& m) {
  nlohmann::ordered_json j;
  j["message_id"] = m.message_id;
  j["tokens"] = m.tokens;
  j["has_hyperlink"] = m.has_hyperlink;
  j["is_retweet"] = m.is_retweet;
  j["normalized_text"] = m.normalized_text;
  return j;
}

inline CleanMessage clean_message_from_json(const nlohmann::json& j) {
  CleanMessage m;
  m.message_id = j.at("message_id").get<std::string>();
  m.tokens = j.at("tokens").get<std::vector<std::string>>();
  m.has_hyperlink = j.value("has_hyperlink", false);
  m.is_retweet = j.value("is_retweet", false);
  m.normalized_text = j.value("normalized_text", str::join(m.tokens, " "));
  if (m.normalized_text != str::join(m.tokens, " "))
    throw ValidationError("normalized_text does not match tokens for '" + m.message_id + "'");
  return m;
}

inline std::vector<CleanMessage> load_clean_messages(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open clean messages '" + path + "'");
  std::vector<CleanMessage> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (str::trim(line).empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      if (j.contains("_meta")) continue;
      out.push_back(clean_message_from_json(j));
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(path, line_no, e.what());
    }
  }
  return out;
}

// One word per line; used for ticker, company and handle name sets.
inline std::unordered_set<std::string> load_word_set(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open word list '" + path + "'");
  std::unordered_set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = str::trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.insert(str::to_lower(t));
  }
  return out;
}

}  // namespace emopipe::textprep

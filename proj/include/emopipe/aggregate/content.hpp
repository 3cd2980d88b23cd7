#pragma once

#include <algorithm>
#include <fstream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/common/strings.hpp"
#include "emopipe/textprep/normalize.hpp"
#include "emopipe/textprep/placeholders.hpp"

namespace emopipe::aggregate {

enum class ChatType { finance, chat };
enum class InfoType { original, disseminating };

inline std::string_view to_string(ChatType t) { return t == ChatType::finance ? "finance" : "chat"; }
inline std::string_view to_string(InfoType t) { return t == InfoType::original ? "original" : "disseminating"; }

struct ContentTag {
  ChatType chat_type = ChatType::chat;
  InfoType info_type = InfoType::original;

  friend bool operator==(const ContentTag&, const ContentTag&) = default;
};

// Terms and phrases, each stored as the token sequence the normalizer would
// produce: punctuation dropped, digit runs replaced by the number placeholder.
class FinanceDictionary {
 public:
  FinanceDictionary() = default;
  explicit FinanceDictionary(const std::vector<std::string>& entries) {
    for (const auto& e : entries) add(e);
  }

  void add(std::string_view entry) {
    auto words = entry_tokens(entry);
    if (words.empty()) return;
    max_len_ = std::max(max_len_, words.size());
    entries_.insert(std::move(words));
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  bool matches(const std::vector<std::string>& tokens) const {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      std::vector<std::string> window;
      for (std::size_t len = 1; len <= max_len_ && i + len <= tokens.size(); ++len) {
        window.push_back(tokens[i + len - 1]);
        if (entries_.count(window)) return true;
      }
    }
    return false;
  }

  static std::vector<std::string> entry_tokens(std::string_view entry) {
    std::vector<std::string> words;
    std::string cur;
    auto flush = [&] {
      if (cur.empty()) return;
      bool digits = true;
      for (char c : cur) digits = digits && str::is_digit(c);
      words.push_back(digits ? std::string(textprep::kNumber) : cur);
      cur.clear();
    };
    for (char c : str::to_lower(entry)) {
      if (str::is_digit(c) || (c >= 'a' && c <= 'z') || static_cast<unsigned char>(c) >= 0x80) cur += c;
      else flush();
    }
    flush();
    return words;
  }

 private:
  std::set<std::vector<std::string>> entries_;
  std::size_t max_len_ = 0;
};

// One lowercase term or phrase per line; blank lines and '#' comments skipped.
inline FinanceDictionary load_finance_dictionary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open finance dictionary '" + path + "'");
  FinanceDictionary dict;
  std::string line;
  while (std::getline(in, line)) {
    auto t = str::trim(line);
    if (t.empty() || t[0] == '#') continue;
    dict.add(t);
  }
  if (dict.empty()) throw ValidationError("finance dictionary '" + path + "' is empty");
  return dict;
}

inline ContentTag tag_content(const textprep::CleanMessage& msg, const FinanceDictionary& dict) {
  ContentTag tag;
  tag.chat_type = dict.matches(msg.tokens) ? ChatType::finance : ChatType::chat;
  tag.info_type = (!msg.is_retweet && !msg.has_hyperlink) ? InfoType::original : InfoType::disseminating;
  return tag;
}

}  // namespace emopipe::aggregate

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "emopipe/common/strings.hpp"
#include "emopipe/textprep/lexicon.hpp"

namespace emopipe::textprep {

inline constexpr std::string_view kNumber = "<number>";
inline constexpr std::string_view kTicker = "<ticker>";
inline constexpr std::string_view kCompany = "<company>";
inline constexpr std::string_view kUser = "<user>";
inline constexpr std::string_view kUnknown = "<unknown>";
inline constexpr std::array<std::string_view, 5> kPlaceholders = {kNumber, kTicker, kCompany, kUser, kUnknown};

inline bool is_placeholder(std::string_view t) {
  for (auto p : kPlaceholders)
    if (t == p) return true;
  return false;
}

// Digits with optional separators, currency sign, percent, ordinal or
// magnitude suffix: "125", "1,000", "3.5", ".62", "$1.45", "46$", "5%", "27th", "10k".
inline bool is_numeric_token(std::string_view t) {
  if (!t.empty() && t.front() == '$') t.remove_prefix(1);
  if (!t.empty() && (t.back() == '$' || t.back() == '%')) t.remove_suffix(1);
  for (std::string_view suffix : {"st", "nd", "rd", "th", "k", "m", "b", "x"}) {
    if (t.size() > suffix.size() && t.substr(t.size() - suffix.size()) == suffix &&
        str::is_digit(t[t.size() - suffix.size() - 1])) {
      t.remove_suffix(suffix.size());
      break;
    }
  }
  if (t.empty()) return false;
  bool digit = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (str::is_digit(t[i])) {
      digit = true;
    } else if ((t[i] == ',' || t[i] == '.') && i + 1 < t.size() && str::is_digit(t[i + 1])) {
      continue;
    } else {
      return false;
    }
  }
  return digit;
}

inline bool is_cashtag_token(std::string_view t) { return t.size() >= 2 && t[0] == '$' && str::is_alpha(t[1]); }

inline bool is_lower_alpha(std::string_view t) {
  if (t.empty()) return false;
  for (char c : t)
    if (c < 'a' || c > 'z') return false;
  return true;
}

// Lowercased name sets feeding the <ticker>, <company> and <user> rules.
struct PlaceholderSets {
  std::unordered_set<std::string> tickers;
  std::unordered_set<std::string> companies;
  std::unordered_set<std::string> user_handles;
};

template <typename Dictionary>
std::vector<std::string> substitute_placeholders(const std::vector<std::string>& tokens, const PlaceholderSets& sets,
                                                 const Dictionary& dict, const EmoLexicon& lexicon) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (is_placeholder(t)) {
      out.push_back(t);
    } else if (is_numeric_token(t)) {
      out.emplace_back(kNumber);
    } else if (is_cashtag_token(t)) {
      out.emplace_back(kTicker);
    } else if (sets.companies.count(t)) {
      out.emplace_back(kCompany);
    } else if (sets.user_handles.count(t)) {
      out.emplace_back(kUser);
    } else if (lexicon.contains(t)) {
      out.push_back(t);
    } else if (sets.tickers.count(t) && !dict.contains(t)) {
      out.emplace_back(kTicker);
    } else if (dict.contains(t)) {
      out.push_back(t);
    } else {
      out.emplace_back(kUnknown);
    }
  }
  return out;
}

}  // namespace emopipe::textprep

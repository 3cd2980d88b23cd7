#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "emopipe/common/strings.hpp"
#include "emopipe/textprep/lexicon.hpp"
#include "emopipe/textprep/placeholders.hpp"
#include "emopipe/textprep/utf8.hpp"

namespace emopipe::textprep {

namespace detail {

// Consumes digits with internal ',' / '.' separators; returns the end offset.
inline std::size_t scan_number(std::string_view s, std::size_t i) {
  while (i < s.size()) {
    if (str::is_digit(s[i])) {
      ++i;
    } else if ((s[i] == ',' || s[i] == '.') && i + 1 < s.size() && str::is_digit(s[i + 1])) {
      ++i;
    } else {
      break;
    }
  }
  return i;
}

inline bool is_word_byte(std::string_view s, std::size_t i, std::size_t* len) {
  const auto c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) {
    *len = 1;
    return str::is_alnum(s[i]) || s[i] == '_';
  }
  char32_t cp = utf8::decode(s, i, len);
  return !utf8::is_pictographic(cp) && !utf8::is_emoji_glue(cp) && !utf8::is_separator(cp);
}

}  // namespace detail

// Splits text into tokens. Lexicon entries and placeholder tags are atomic
// (greedy longest match, even when glued to words); cashtags keep their '$';
// numbers keep internal separators; other punctuation separates and is dropped.
inline std::vector<std::string> lex(std::string_view text, const EmoLexicon& lexicon) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (str::is_space(c)) {
      ++i;
      continue;
    }
    if (c == '<') {
      bool matched = false;
      for (auto p : kPlaceholders) {
        if (text.substr(i, p.size()) == p) {
          tokens.emplace_back(p);
          i += p.size();
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    if (std::size_t n = lexicon.longest_match(text, i)) {
      tokens.emplace_back(text.substr(i, n));
      i += n;
      continue;
    }
    if (c == '$' && i + 1 < text.size() && str::is_alpha(text[i + 1])) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (str::is_alnum(text[j]) || (text[j] == '.' && j + 1 < text.size() && str::is_alpha(text[j + 1]))))
        ++j;
      tokens.emplace_back(text.substr(i, j - i));
      i = j;
      continue;
    }
    if (str::is_digit(c) || ((c == '$' || c == '.') && i + 1 < text.size() && str::is_digit(text[i + 1]))) {
      std::size_t j = detail::scan_number(text, c == '$' || c == '.' ? i + 1 : i);
      std::size_t len = 0;
      if (j < text.size() && detail::is_word_byte(text, j, &len)) {
        // Alphanumeric run such as "27th", "q3", "10k": one word token.
        while (j < text.size() && detail::is_word_byte(text, j, &len)) j += len;
      } else if (j < text.size() && (text[j] == '%' || text[j] == '$')) {
        ++j;
      }
      tokens.emplace_back(text.substr(i, j - i));
      i = j;
      continue;
    }
    std::size_t len = 0;
    if (detail::is_word_byte(text, i, &len)) {
      std::size_t j = i;
      while (j < text.size() && detail::is_word_byte(text, j, &len)) {
        // A lexicon entry that does not begin with an alphanumeric ends the word.
        if (j > i && !str::is_alnum(text[j]) && lexicon.longest_match(text, j)) break;
        j += len;
      }
      tokens.emplace_back(text.substr(i, j - i));
      i = j;
      continue;
    }
    if (static_cast<unsigned char>(c) >= 0x80) {
      char32_t cp = utf8::decode(text, i, &len);
      if (utf8::is_pictographic(cp)) {
        // Unlisted pictograph: the code point plus any trailing glue.
        std::size_t j = i + len;
        while (j < text.size()) {
          std::size_t l2 = 0;
          if (!utf8::is_emoji_glue(utf8::decode(text, j, &l2))) break;
          j += l2;
        }
        tokens.emplace_back(text.substr(i, j - i));
        i = j;
        continue;
      }
      i += len;
      continue;
    }
    ++i;  // ASCII punctuation
  }
  return tokens;
}

}  // namespace emopipe::textprep

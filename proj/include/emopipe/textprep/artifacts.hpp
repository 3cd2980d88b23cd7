#pragma once

#include <string>
#include <string_view>

#include "emopipe/common/strings.hpp"

namespace emopipe::textprep {

struct StrippedText {
  std::string text;
  bool has_hyperlink = false;
};

namespace detail {

inline bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[pos + i];
    if (str::is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

inline std::string collapse_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (str::is_space(c)) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
    } else {
      out.push_back(c);
    }
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

}  // namespace detail

// Removes URLs, image markup (markdown images, <img> tags, pic.twitter.com
// links) and @mention / #hashtag tags, then collapses whitespace.
inline StrippedText strip_artifacts(std::string_view text) {
  StrippedText out;
  std::string buf;
  buf.reserve(text.size());
  std::size_t i = 0;
  auto skip_to_space = [&] {
    while (i < text.size() && !str::is_space(text[i])) ++i;
  };
  while (i < text.size()) {
    const bool boundary = i == 0 || !str::is_alnum(text[i - 1]);
    if (boundary && (detail::starts_with_ci(text, i, "http://") || detail::starts_with_ci(text, i, "https://") ||
                     detail::starts_with_ci(text, i, "www."))) {
      out.has_hyperlink = true;
      skip_to_space();
      buf.push_back(' ');
      continue;
    }
    if (boundary && detail::starts_with_ci(text, i, "pic.twitter.com/")) {
      skip_to_space();
      buf.push_back(' ');
      continue;
    }
    if (text[i] == '!' && i + 1 < text.size() && text[i + 1] == '[') {
      auto close = text.find("](", i + 2);
      auto end = close == std::string_view::npos ? close : text.find(')', close + 2);
      if (end != std::string_view::npos) {
        i = end + 1;
        buf.push_back(' ');
        continue;
      }
    }
    if (detail::starts_with_ci(text, i, "<img")) {
      auto end = text.find('>', i);
      if (end != std::string_view::npos) {
        i = end + 1;
        buf.push_back(' ');
        continue;
      }
    }
    if ((text[i] == '@' || text[i] == '#') && boundary && i + 1 < text.size() &&
        (str::is_alnum(text[i + 1]) || text[i + 1] == '_')) {
      ++i;
      while (i < text.size() && (str::is_alnum(text[i]) || text[i] == '_')) ++i;
      buf.push_back(' ');
      continue;
    }
    buf.push_back(text[i++]);
  }
  out.text = detail::collapse_spaces(buf);
  return out;
}

}  // namespace emopipe::textprep

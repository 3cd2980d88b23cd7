#pragma once

#include <cstdint>
#include <string_view>

namespace emopipe::utf8 {

// Byte length of the UTF-8 sequence starting with lead byte `c` (1 for invalid bytes).
inline std::size_t sequence_length(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c >> 5) == 0x6) return 2;
  if ((c >> 4) == 0xE) return 3;
  if ((c >> 3) == 0x1E) return 4;
  return 1;
}

// Decodes the code point at `pos`; invalid sequences decode as the raw byte.
inline char32_t decode(std::string_view s, std::size_t pos, std::size_t* len) {
  const auto c = static_cast<unsigned char>(s[pos]);
  std::size_t n = sequence_length(c);
  if (pos + n > s.size()) n = 1;
  *len = n;
  if (n == 1) return c;
  char32_t cp = c & (0xFF >> (n + 1));
  for (std::size_t i = 1; i < n; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      *len = 1;
      return c;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  return cp;
}

// Pictographic code points lexed as standalone symbol tokens.
inline bool is_pictographic(char32_t cp) {
  return (cp >= 0x1F000 && cp <= 0x1FAFF) || (cp >= 0x2600 && cp <= 0x27BF) || (cp >= 0x2B00 && cp <= 0x2BFF) ||
         (cp >= 0x2190 && cp <= 0x21FF) || (cp >= 0x2300 && cp <= 0x23FF) || (cp >= 0x25A0 && cp <= 0x25FF) ||
         cp == 0x00A9 || cp == 0x00AE || cp == 0x203C || cp == 0x2049 || cp == 0x2122 || cp == 0x2139 ||
         cp == 0x3030 || cp == 0x303D || cp == 0x3297 || cp == 0x3299;
}

// Joiners and modifiers that only make sense inside an emoji sequence.
inline bool is_emoji_glue(char32_t cp) {
  return cp == 0x200D || cp == 0xFE0F || cp == 0xFE0E || cp == 0x20E3 || (cp >= 0xE0020 && cp <= 0xE007F);
}

// Non-ASCII punctuation and spacing treated as separators.
inline bool is_separator(char32_t cp) {
  return (cp >= 0x2000 && cp <= 0x206F) || cp == 0x00A0 || (cp >= 0x3000 && cp <= 0x3003) || cp == 0x00AB ||
         cp == 0x00BB || cp == 0x00BF || cp == 0x00A1 || cp == 0xFEFF;
}

}  // namespace emopipe::utf8

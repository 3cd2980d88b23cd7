#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <unordered_map>

#include "emopipe/common/error.hpp"
#include "emopipe/common/strings.hpp"

namespace emopipe::textprep {

class ContractionTable {
 public:
  void add(std::string contraction, std::string expansion) {
    table_.insert_or_assign(std::move(contraction), std::move(expansion));
  }
  std::size_t size() const { return table_.size(); }

  const std::string* find(std::string_view word) const {
    auto it = table_.find(std::string(word));
    return it == table_.end() ? nullptr : &it->second;
  }

  // Replaces every whole-word contraction. Input is expected lowercase; curly
  // apostrophes are folded to ASCII first.
  std::string expand(std::string_view text) const {
    std::string folded;
    folded.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text.substr(i, 3) == "\xE2\x80\x99") {  // U+2019
        folded.push_back('\'');
        i += 2;
      } else {
        folded.push_back(text[i]);
      }
    }
    std::string out;
    out.reserve(folded.size());
    std::size_t i = 0;
    while (i < folded.size()) {
      auto word_char = [](char c) { return str::is_alpha(c) || c == '\''; };
      if (!word_char(folded[i]) || (i > 0 && str::is_alnum(folded[i - 1]))) {
        out.push_back(folded[i++]);
        continue;
      }
      std::size_t j = i;
      while (j < folded.size() && word_char(folded[j])) ++j;
      const bool right_ok = j == folded.size() || !str::is_digit(folded[j]);
      std::string_view word(folded.data() + i, j - i);
      const std::string* exp = right_ok ? find(word) : nullptr;
      if (exp) {
        out += *exp;
        i = j;
        continue;
      }
      // Quoted word such as 'i've': look up without the surrounding quotes.
      std::size_t lead = 0, trail = 0;
      while (lead < word.size() && word[lead] == '\'') ++lead;
      while (trail < word.size() - lead && word[word.size() - 1 - trail] == '\'') ++trail;
      std::string_view inner = word.substr(lead, word.size() - lead - trail);
      exp = right_ok && !inner.empty() && (lead || trail) ? find(inner) : nullptr;
      if (exp) {
        out.append(lead, '\'');
        out += *exp;
        out.append(trail, '\'');
      } else {
        out.append(word);
      }
      i = j;
    }
    return out;
  }

 private:
  std::unordered_map<std::string, std::string> table_;
};

// Format: contraction<TAB>expansion per line.
inline ContractionTable load_contractions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open contraction table '" + path + "'");
  ContractionTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (str::trim(line).empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(path, line_no, "expected contraction<TAB>expansion");
    table.add(str::to_lower(line.substr(0, tab)), str::to_lower(line.substr(tab + 1)));
  }
  return table;
}

}  // namespace emopipe::textprep

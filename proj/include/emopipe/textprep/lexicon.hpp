#pragma once

#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/common/strings.hpp"

namespace emopipe::textprep {

// Emoticon and emoji inventory, matched greedily (longest entry wins) over bytes.
// Entries whose first byte is alphanumeric only match at a token start; entries
// whose last byte is alphanumeric only match when followed by a non-alphanumeric.
class EmoLexicon {
 public:
  EmoLexicon() : nodes_(1) {}

  void add(std::string_view entry) {
    if (entry.empty()) return;
    std::size_t node = 0;
    for (char c : entry) {
      auto& children = nodes_[node].children;
      auto it = children.find(static_cast<unsigned char>(c));
      if (it == children.end()) {
        nodes_.emplace_back();
        it = nodes_[node].children.emplace(static_cast<unsigned char>(c), nodes_.size() - 1).first;
      }
      node = it->second;
    }
    if (!nodes_[node].terminal) ++size_;
    nodes_[node].terminal = true;
  }

  bool contains(std::string_view s) const {
    std::size_t node = 0;
    for (char c : s) {
      const auto& children = nodes_[node].children;
      auto it = children.find(static_cast<unsigned char>(c));
      if (it == children.end()) return false;
      node = it->second;
    }
    return !s.empty() && nodes_[node].terminal;
  }

  // Length of the longest admissible entry starting at `pos`, 0 if none.
  std::size_t longest_match(std::string_view text, std::size_t pos) const {
    const bool left_boundary = pos == 0 || !str::is_alnum(text[pos - 1]);
    if (!left_boundary && str::is_alnum(text[pos])) return 0;
    std::size_t node = 0;
    std::size_t best = 0;
    for (std::size_t i = pos; i < text.size(); ++i) {
      const auto& children = nodes_[node].children;
      auto it = children.find(static_cast<unsigned char>(text[i]));
      if (it == children.end()) break;
      node = it->second;
      if (!nodes_[node].terminal) continue;
      const bool ends_alnum = str::is_alnum(text[i]);
      const bool right_boundary = i + 1 == text.size() || !str::is_alnum(text[i + 1]);
      if (!ends_alnum || right_boundary) best = i + 1 - pos;
    }
    return best;
  }

  std::size_t size() const { return size_; }

 private:
  struct Node {
    std::map<unsigned char, std::size_t> children;
    bool terminal = false;
  };
  std::vector<Node> nodes_;
  std::size_t size_ = 0;
};

// One entry per line, UTF-8. Entries are lowercased (ASCII) because lexing runs
// on lowercased text.
inline EmoLexicon load_lexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open lexicon '" + path + "'");
  EmoLexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    lex.add(str::to_lower(line));
  }
  return lex;
}

}  // namespace emopipe::textprep

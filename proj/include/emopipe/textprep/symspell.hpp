#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/common/metadata.hpp"
#include "emopipe/common/strings.hpp"

namespace emopipe::textprep {

inline constexpr int kDefaultMaxEditDistance = 2;

// Optimal string alignment distance (Levenshtein plus adjacent transposition).
// Returns max_distance + 1 as soon as the distance is known to exceed it.
inline int osa_distance(std::string_view a, std::string_view b, int max_distance) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  if (std::abs(n - m) > max_distance) return max_distance + 1;
  std::vector<int> prev2(m + 1), prev(m + 1), cur(m + 1);
  for (int j = 0; j <= m; ++j) prev[j] = j;
  for (int i = 1; i <= n; ++i) {
    cur[0] = i;
    int row_min = cur[0];
    for (int j = 1; j <= m; ++j) {
      const int cost = a[i - 1] == b[j - 1] ? 0 : 1;
      int v = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) v = std::min(v, prev2[j - 2] + 1);
      cur[j] = v;
      row_min = std::min(row_min, v);
    }
    if (row_min > max_distance) return max_distance + 1;
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return std::min(prev[m], max_distance + 1);
}

// Every string reachable from `word` by deleting at most `max_deletes`
// characters, including `word` itself. No duplicates.
inline std::vector<std::string> deletion_variants(std::string_view word, int max_deletes) {
  std::unordered_set<std::string> seen{std::string(word)};
  std::vector<std::string> frontier{std::string(word)};
  std::vector<std::string> out{std::string(word)};
  for (int d = 0; d < max_deletes; ++d) {
    std::vector<std::string> next;
    for (const auto& w : frontier) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        std::string v = w.substr(0, i) + w.substr(i + 1);
        if (seen.insert(v).second) {
          out.push_back(v);
          next.push_back(std::move(v));
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// Word frequencies plus a symmetric-deletion index: every deletion variant
// (up to max_edit_distance deletes) of every word, keyed by a 64-bit hash and
// sorted for binary search. Hash collisions only add candidates, which the exact
// distance check then rejects.
class FrequencyDictionary {
 public:
  explicit FrequencyDictionary(int max_edit_distance = kDefaultMaxEditDistance)
      : max_edit_distance_(max_edit_distance) {
    if (max_edit_distance < 0) throw ValidationError("max_edit_distance must be >= 0");
  }

  // Adds (or accumulates) a word; invalidates the index until build_index().
  void add(std::string_view word, std::uint64_t count) {
    if (word.empty() || count == 0) return;
    auto [it, inserted] = index_of_.try_emplace(std::string(word), words_.size());
    if (inserted) {
      words_.emplace_back(word);
      counts_.push_back(count);
      total_ += count;
    } else {
      counts_[it->second] += count;
      total_ += count;
    }
    indexed_ = false;
  }

  void build_index() {
    deletes_.clear();
    for (std::uint32_t id = 0; id < words_.size(); ++id)
      for (const auto& v : deletion_variants(words_[id], max_edit_distance_)) deletes_.emplace_back(fnv1a64(v), id);
    std::sort(deletes_.begin(), deletes_.end());
    indexed_ = true;
  }

  bool contains(std::string_view word) const { return index_of_.count(std::string(word)) != 0; }

  std::uint64_t count(std::string_view word) const {
    auto it = index_of_.find(std::string(word));
    return it == index_of_.end() ? 0 : counts_[it->second];
  }

  int max_edit_distance() const { return max_edit_distance_; }
  std::size_t size() const { return words_.size(); }
  std::uint64_t total_count() const { return total_; }
  const std::vector<std::string>& words() const { return words_; }
  std::size_t max_word_length() const {
    std::size_t n = 0;
    for (const auto& w : words_) n = std::max(n, w.size());
    return n;
  }

  // Ids of words sharing a deletion variant (by hash) with `term`; a superset of
  // all words within max_edit_distance.
  std::vector<std::uint32_t> candidate_ids(std::string_view term) const {
    if (!indexed_) throw Error("FrequencyDictionary: index not built");
    std::vector<std::uint32_t> ids;
    for (const auto& v : deletion_variants(term, max_edit_distance_)) {
      const std::uint64_t h = fnv1a64(v);
      auto lo = std::lower_bound(deletes_.begin(), deletes_.end(), std::make_pair(h, std::uint32_t{0}));
      for (; lo != deletes_.end() && lo->first == h; ++lo) ids.push_back(lo->second);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  }

  // Whether every indexed entry derives from a stored word.
  bool index_consistent() const {
    for (const auto& [h, id] : deletes_) {
      if (id >= words_.size()) return false;
      bool found = false;
      for (const auto& v : deletion_variants(words_[id], max_edit_distance_))
        if (fnv1a64(v) == h) found = true;
      if (!found) return false;
    }
    return indexed_;
  }

  bool index_contains_variant(std::string_view variant) const {
    const std::uint64_t h = fnv1a64(variant);
    auto lo = std::lower_bound(deletes_.begin(), deletes_.end(), std::make_pair(h, std::uint32_t{0}));
    return lo != deletes_.end() && lo->first == h;
  }

  const std::string& word(std::uint32_t id) const { return words_[id]; }
  std::uint64_t count_of(std::uint32_t id) const { return counts_[id]; }

  // word<TAB>count per line, sorted by descending count then word.
  void write(std::ostream& out) const {
    std::vector<std::uint32_t> order(words_.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      return counts_[a] != counts_[b] ? counts_[a] > counts_[b] : words_[a] < words_[b];
    });
    for (auto id : order) out << words_[id] << '\t' << counts_[id] << '\n';
  }

 private:
  int max_edit_distance_;
  std::vector<std::string> words_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::uint32_t> index_of_;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> deletes_;
  std::uint64_t total_ = 0;
  bool indexed_ = false;
};

inline FrequencyDictionary load_frequency_dictionary(const std::string& path,
                                                     int max_edit_distance = kDefaultMaxEditDistance) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open dictionary '" + path + "'");
  FrequencyDictionary dict(max_edit_distance);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (str::trim(line).empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(path, line_no, "expected word<TAB>count");
    auto count = str::parse_int(line.substr(tab + 1));
    if (!count || *count < 1) throw ParseError(path, line_no, "count must be a positive integer");
    dict.add(str::to_lower(line.substr(0, tab)), static_cast<std::uint64_t>(*count));
  }
  dict.build_index();
  return dict;
}

// Counts the alphabetic corpus tokens that survive the exclusions.
template <typename Lexicon>
FrequencyDictionary build_frequency_dictionary(const std::vector<std::vector<std::string>>& corpus,
                                               const std::unordered_set<std::string>& tickers,
                                               const std::unordered_set<std::string>& standard_words,
                                               const Lexicon& lexicon,
                                               int max_edit_distance = kDefaultMaxEditDistance) {
  if (corpus.empty()) throw ValidationError("build_frequency_dictionary: empty corpus");
  FrequencyDictionary dict(max_edit_distance);
  for (const auto& doc : corpus) {
    for (const auto& raw : doc) {
      std::string t = str::to_lower(raw);
      std::string bare = !t.empty() && t[0] == '$' ? t.substr(1) : t;
      if (tickers.count(bare) || standard_words.count(t) || lexicon.contains(t)) continue;
      bool alpha = !t.empty();
      for (char c : t) alpha = alpha && c >= 'a' && c <= 'z';
      if (!alpha) continue;
      dict.add(t, 1);
    }
  }
  if (dict.size() == 0) throw ValidationError("build_frequency_dictionary: vocabulary empty after exclusions");
  dict.build_index();
  return dict;
}

// Known words come back unchanged. Otherwise the dictionary word within
// max_edit_distance with the highest count wins; ties go to the smaller
// distance, then the lexicographically smaller word. No candidate: unchanged.
inline std::string correct_spelling(std::string_view token, const FrequencyDictionary& dict) {
  if (dict.contains(token)) return std::string(token);
  const int max_d = dict.max_edit_distance();
  const std::string* best = nullptr;
  std::uint64_t best_count = 0;
  int best_distance = std::numeric_limits<int>::max();
  for (auto id : dict.candidate_ids(token)) {
    const std::string& w = dict.word(id);
    const int d = osa_distance(token, w, max_d);
    if (d > max_d) continue;
    const std::uint64_t c = dict.count_of(id);
    if (!best || c > best_count || (c == best_count && (d < best_distance || (d == best_distance && w < *best)))) {
      best = &w;
      best_count = c;
      best_distance = d;
    }
  }
  return best ? *best : std::string(token);
}

// Splits an unknown word into dictionary words, maximizing the product of
// relative word frequencies. Returns {word} when the word is already known or
// no full segmentation into two or more dictionary words exists.
inline std::vector<std::string> segment_word(std::string_view word, const FrequencyDictionary& dict) {
  if (word.empty() || dict.contains(word) || dict.total_count() == 0) return {std::string(word)};
  const std::size_t n = word.size();
  const double log_total = std::log(static_cast<double>(dict.total_count()));
  constexpr double kNone = -std::numeric_limits<double>::infinity();
  std::vector<double> best(n + 1, kNone);
  std::vector<std::size_t> back(n + 1, 0);
  best[0] = 0.0;
  for (std::size_t end = 1; end <= n; ++end) {
    for (std::size_t start = 0; start < end; ++start) {
      if (best[start] == kNone) continue;
      const std::uint64_t c = dict.count(word.substr(start, end - start));
      if (c == 0) continue;
      const double score = best[start] + std::log(static_cast<double>(c)) - log_total;
      if (score > best[end]) {
        best[end] = score;
        back[end] = start;
      }
    }
  }
  if (best[n] == kNone) return {std::string(word)};
  std::vector<std::string> parts;
  for (std::size_t end = n; end > 0; end = back[end]) parts.emplace_back(word.substr(back[end], end - back[end]));
  std::reverse(parts.begin(), parts.end());
  if (parts.size() < 2) return {std::string(word)};
  return parts;
}

}  // namespace emopipe::textprep

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/common/strings.hpp"
#include "emopipe/emoclass/porter.hpp"
#include "emopipe/textprep/placeholders.hpp"
#include "json.hpp"

namespace emopipe::emoclass {

// Sorted (column, value) pairs.
using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

struct FeatureMatrix {
  std::size_t cols = 0;
  std::vector<SparseVector> rows;

  std::size_t size() const { return rows.size(); }

  static FeatureMatrix from_dense(const std::vector<std::vector<double>>& dense) {
    FeatureMatrix m;
    m.cols = dense.empty() ? 0 : dense.front().size();
    for (const auto& r : dense) {
      SparseVector s;
      for (std::uint32_t j = 0; j < r.size(); ++j)
        if (r[j] != 0.0) s.emplace_back(j, r[j]);
      m.rows.push_back(std::move(s));
    }
    return m;
  }
};

inline double sparse_value(const SparseVector& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, std::uint32_t c) { return e.first < c; });
  return it != row.end() && it->first == col ? it->second : 0.0;
}

struct TfidfConfig {
  int ngram_max = 3;
  std::size_t min_df = 2;
  bool stem = true;
  std::set<std::string> stopwords;
};

// Vocabulary of 1..ngram_max grams over stopword-filtered, stemmed tokens with
// smoothed idf = ln((1 + N) / (1 + df)) + 1. Rows are L2-normalized.
class TfidfModel {
 public:
  TfidfModel() = default;

  static TfidfModel fit(const std::vector<std::vector<std::string>>& docs, const TfidfConfig& cfg) {
    if (docs.empty()) throw ValidationError("tfidf: empty corpus");
    if (cfg.ngram_max < 1) throw ValidationError("tfidf: ngram_max must be >= 1");
    TfidfModel m;
    m.ngram_max_ = cfg.ngram_max;
    m.stem_ = cfg.stem;
    m.stopwords_ = cfg.stopwords;
    std::map<std::string, std::size_t> df;
    for (const auto& doc : docs) {
      auto grams = m.ngrams(doc);
      std::sort(grams.begin(), grams.end());
      grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
      for (auto& g : grams) ++df[g];
    }
    const double n = static_cast<double>(docs.size());
    for (const auto& [term, count] : df) {
      if (count < cfg.min_df) continue;
      m.vocabulary_.emplace(term, static_cast<std::uint32_t>(m.idf_.size()));
      m.idf_.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
    }
    if (m.idf_.empty()) throw ValidationError("tfidf: vocabulary empty after min_df filtering");
    return m;
  }

  // Stopword removal and stemming; placeholders and emo tokens pass through.
  std::vector<std::string> analyze(const std::vector<std::string>& tokens) const {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
      if (t.empty() || stopwords_.count(t)) continue;
      out.push_back(stem_ && textprep::is_lower_alpha(t) ? porter_stem(t) : t);
    }
    return out;
  }

  std::vector<std::string> ngrams(const std::vector<std::string>& tokens) const {
    auto terms = analyze(tokens);
    std::vector<std::string> out;
    for (int n = 1; n <= ngram_max_; ++n) {
      for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= terms.size(); ++i) {
        std::string g = terms[i];
        for (int k = 1; k < n; ++k) g += ' ' + terms[i + static_cast<std::size_t>(k)];
        out.push_back(std::move(g));
      }
    }
    return out;
  }

  SparseVector transform(const std::vector<std::string>& tokens) const {
    std::map<std::uint32_t, double> tf;
    for (const auto& g : ngrams(tokens)) {
      auto it = vocabulary_.find(g);
      if (it != vocabulary_.end()) tf[it->second] += 1.0;
    }
    SparseVector row;
    double norm = 0.0;
    for (const auto& [col, count] : tf) {
      const double v = count * idf_[col];
      row.emplace_back(col, v);
      norm += v * v;
    }
    if (norm > 0.0) {
      norm = std::sqrt(norm);
      for (auto& e : row) e.second /= norm;
    }
    return row;
  }

  FeatureMatrix transform_all(const std::vector<std::vector<std::string>>& docs) const {
    FeatureMatrix m;
    m.cols = idf_.size();
    m.rows.reserve(docs.size());
    for (const auto& d : docs) m.rows.push_back(transform(d));
    return m;
  }

  std::size_t size() const { return idf_.size(); }
  const std::map<std::string, std::uint32_t>& vocabulary() const { return vocabulary_; }
  const std::vector<double>& idf() const { return idf_; }
  double idf_of(const std::string& term) const {
    auto it = vocabulary_.find(term);
    return it == vocabulary_.end() ? 0.0 : idf_[it->second];
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["ngram_max"] = ngram_max_;
    j["stem"] = stem_;
    j["stopwords"] = stopwords_;
    std::vector<std::string> terms(idf_.size());
    for (const auto& [t, i] : vocabulary_) terms[i] = t;
    j["terms"] = terms;
    j["idf"] = idf_;
    return j;
  }

  static TfidfModel from_json(const nlohmann::json& j) {
    TfidfModel m;
    m.ngram_max_ = j.at("ngram_max").get<int>();
    m.stem_ = j.at("stem").get<bool>();
    m.stopwords_ = j.at("stopwords").get<std::set<std::string>>();
    auto terms = j.at("terms").get<std::vector<std::string>>();
    m.idf_ = j.at("idf").get<std::vector<double>>();
    if (terms.size() != m.idf_.size()) throw ValidationError("tfidf: terms and idf differ in length");
    for (std::uint32_t i = 0; i < terms.size(); ++i) m.vocabulary_.emplace(terms[i], i);
    return m;
  }

 private:
  int ngram_max_ = 3;
  bool stem_ = true;
  std::set<std::string> stopwords_;
  std::map<std::string, std::uint32_t> vocabulary_;
  std::vector<double> idf_;
};

}  // namespace emopipe::emoclass

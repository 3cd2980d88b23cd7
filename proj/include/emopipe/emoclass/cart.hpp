#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <tuple>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/emoclass/emotion.hpp"
#include "emopipe/emoclass/tfidf.hpp"
#include "json.hpp"

namespace emopipe::emoclass {

struct CartHyper {
  std::size_t max_depth = 12;
  std::size_t min_leaf = 1;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // x <= threshold goes left
  int left = -1;
  int right = -1;
  EmotionDistribution dist;
};

struct TreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  EmotionDistribution predict(const SparseVector& x) const {
    std::size_t i = 0;
    while (nodes[i].feature >= 0) {
      const auto& n = nodes[i];
      i = static_cast<std::size_t>(sparse_value(x, static_cast<std::uint32_t>(n.feature)) <= n.threshold ? n.left
                                                                                                          : n.right);
    }
    return nodes[i].dist;
  }

  std::size_t depth() const { return depth_from(0); }
  std::size_t leaves() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const auto& n) { return n.feature < 0; }));
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& n : nodes)
      arr.push_back({{"feature", n.feature}, {"threshold", n.threshold}, {"left", n.left}, {"right", n.right},
                     {"dist", n.dist.p}});
    return {{"nodes", arr}};
  }
  static TreeModel from_json(const nlohmann::json& j) {
    TreeModel t;
    for (const auto& e : j.at("nodes")) {
      TreeNode n;
      n.feature = e.at("feature").get<int>();
      n.threshold = e.at("threshold").get<double>();
      n.left = e.at("left").get<int>();
      n.right = e.at("right").get<int>();
      n.dist.p = e.at("dist").get<std::array<double, kNumEmotions>>();
      t.nodes.push_back(n);
    }
    if (t.nodes.empty()) throw ValidationError("tree model: no nodes");
    return t;
  }

 private:
  std::size_t depth_from(std::size_t i) const {
    if (nodes[i].feature < 0) return 0;
    return 1 + std::max(depth_from(static_cast<std::size_t>(nodes[i].left)),
                        depth_from(static_cast<std::size_t>(nodes[i].right)));
  }
};

namespace cart_detail {

using Counts = std::array<std::size_t, kNumEmotions>;

inline double gini(const Counts& c, std::size_t n) {
  if (n == 0) return 0.0;
  double s = 0.0;
  for (auto k : c) {
    const double p = static_cast<double>(k) / static_cast<double>(n);
    s += p * p;
  }
  return 1.0 - s;
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = -std::numeric_limits<double>::infinity();
};

class Builder {
 public:
  Builder(const FeatureMatrix& x, const std::vector<Emotion>& y, const CartHyper& h) : x_(x), y_(y), h_(h) {}

  TreeModel build() {
    std::vector<std::uint32_t> all(x_.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    grow(all, 0);
    return std::move(tree_);
  }

 private:
  int grow(const std::vector<std::uint32_t>& rows, std::size_t depth) {
    Counts counts{};
    for (auto r : rows) ++counts[index_of(y_[r])];
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    for (std::size_t c = 0; c < kNumEmotions; ++c)
      tree_.nodes[id].dist.p[c] = static_cast<double>(counts[c]) / static_cast<double>(rows.size());

    const bool pure = std::count_if(counts.begin(), counts.end(), [](auto k) { return k > 0; }) <= 1;
    if (pure || depth >= h_.max_depth || rows.size() < 2 * std::max<std::size_t>(1, h_.min_leaf)) return id;
    const Split s = best_split(rows, counts);
    if (s.feature < 0) return id;

    std::vector<std::uint32_t> left, right;
    for (auto r : rows)
      (sparse_value(x_.rows[r], static_cast<std::uint32_t>(s.feature)) <= s.threshold ? left : right).push_back(r);
    tree_.nodes[id].feature = s.feature;
    tree_.nodes[id].threshold = s.threshold;
    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    tree_.nodes[id].left = l;
    tree_.nodes[id].right = r;
    return id;
  }

  // Gathers the node's nonzeros per feature; the implicit zeros of a feature
  // form one block placed at its sorted position.
  Split best_split(const std::vector<std::uint32_t>& rows, const Counts& total) const {
    std::vector<std::tuple<std::uint32_t, double, int>> entries;
    for (auto r : rows)
      for (const auto& [j, v] : x_.rows[r])
        if (v != 0.0) entries.emplace_back(j, v, static_cast<int>(index_of(y_[r])));
    std::sort(entries.begin(), entries.end());

    const std::size_t n = rows.size();
    const double parent = gini(total, n);
    const std::size_t min_leaf = std::max<std::size_t>(1, h_.min_leaf);
    Split best;
    std::vector<std::pair<double, Counts>> groups;
    for (std::size_t a = 0; a < entries.size();) {
      const std::uint32_t f = std::get<0>(entries[a]);
      std::size_t b = a;
      while (b < entries.size() && std::get<0>(entries[b]) == f) ++b;

      groups.clear();
      Counts nonzero{};
      for (std::size_t i = a; i < b; ++i) {
        const double v = std::get<1>(entries[i]);
        if (groups.empty() || groups.back().first != v) groups.push_back({v, Counts{}});
        ++groups.back().second[static_cast<std::size_t>(std::get<2>(entries[i]))];
        ++nonzero[static_cast<std::size_t>(std::get<2>(entries[i]))];
      }
      if (b - a < n) {
        Counts zeros{};
        for (std::size_t c = 0; c < kNumEmotions; ++c) zeros[c] = total[c] - nonzero[c];
        auto pos = std::lower_bound(groups.begin(), groups.end(), 0.0,
                                    [](const auto& g, double v) { return g.first < v; });
        groups.insert(pos, {0.0, zeros});
      }

      Counts left{};
      std::size_t nl = 0;
      for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
        for (std::size_t c = 0; c < kNumEmotions; ++c) {
          left[c] += groups[g].second[c];
          nl += groups[g].second[c];
        }
        const std::size_t nr = n - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        Counts right{};
        for (std::size_t c = 0; c < kNumEmotions; ++c) right[c] = total[c] - left[c];
        const double gain = parent - (static_cast<double>(nl) * gini(left, nl) + static_cast<double>(nr) * gini(right, nr)) /
                                         static_cast<double>(n);
        if (gain > best.gain + 1e-12) {
          best.feature = static_cast<int>(f);
          best.threshold = 0.5 * (groups[g].first + groups[g + 1].first);
          best.gain = gain;
        }
      }
      a = b;
    }
    return best;
  }

  const FeatureMatrix& x_;
  const std::vector<Emotion>& y_;
  CartHyper h_;
  TreeModel tree_;
};

}  // namespace cart_detail

// Greedy binary tree on Gini impurity. Impure nodes split on the best valid
// threshold even when the gain is zero (XOR-style data needs that first cut);
// leaves carry the empirical class distribution.
inline TreeModel train_cart(const FeatureMatrix& x, const std::vector<Emotion>& y, const CartHyper& hyper) {
  if (x.size() == 0 || x.size() != y.size()) throw ValidationError("train_cart: features and labels misaligned");
  return cart_detail::Builder(x, y, hyper).build();
}

}  // namespace emopipe::emoclass

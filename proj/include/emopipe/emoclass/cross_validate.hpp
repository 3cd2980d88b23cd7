#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/common/rng.hpp"
#include "emopipe/emoclass/emotion.hpp"
#include "emopipe/emoclass/evaluate.hpp"

namespace emopipe::emoclass {

inline constexpr std::uint64_t kDefaultCvSeed = 42;

// Stratified fold ids in [0, k). Each class is shuffled and dealt round-robin,
// the dealer position carrying over between classes, so fold sizes differ by at
// most one. Classes smaller than k are pooled and dealt last, unstratified.
inline std::vector<std::size_t> stratified_folds(const std::vector<Emotion>& labels, std::size_t k,
                                                 std::uint64_t seed, std::vector<std::string>* warnings = nullptr) {
  if (k < 2) throw ValidationError("cross-validation needs k >= 2");
  if (labels.size() < k)
    throw ValidationError("cross-validation: " + std::to_string(labels.size()) + " examples for k=" + std::to_string(k));
  std::map<Emotion, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  Rng rng(seed);
  std::vector<std::size_t> fold(labels.size(), 0);
  std::vector<std::size_t> pooled;
  std::size_t dealer = 0;
  for (auto& [cls, members] : by_class) {
    if (members.size() < k) {
      if (warnings)
        warnings->push_back("class '" + std::string(emotion_name(cls)) + "' has " + std::to_string(members.size()) +
                            " examples, fewer than k=" + std::to_string(k) + "; assigned unstratified");
      pooled.insert(pooled.end(), members.begin(), members.end());
      continue;
    }
    rng.shuffle(members);
    for (auto i : members) fold[i] = dealer++ % k;
  }
  rng.shuffle(pooled);
  for (auto i : pooled) fold[i] = dealer++ % k;
  return fold;
}

struct FoldMetrics {
  std::size_t fold = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  double loss = 0.0;
  double accuracy = 0.0;
  double loss3 = 0.0;      // positive / neutral / negative
  double accuracy3 = 0.0;
};

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample SD across folds
};

inline MeanSd mean_sd(const std::vector<double>& v) {
  MeanSd out;
  if (v.empty()) return out;
  for (double x : v) out.mean += x;
  out.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return out;
}

struct CvReport {
  std::uint64_t seed = kDefaultCvSeed;
  std::size_t k = 5;
  std::vector<std::size_t> fold_of;
  std::vector<FoldMetrics> folds;
  MeanSd loss, accuracy, loss3, accuracy3;
  ConfusionMatrix confusion;  // pooled out-of-fold predictions
  std::vector<EmotionDistribution> out_of_fold;
  std::vector<std::string> warnings;
};

// fit_predict(train_indices, test_indices) trains on the first set and returns
// one distribution per test index, in order.
template <typename FitPredict>
CvReport cross_validate(const std::vector<Emotion>& labels, std::size_t k, std::uint64_t seed, FitPredict&& fit_predict) {
  CvReport rep;
  rep.seed = seed;
  rep.k = k;
  rep.fold_of = stratified_folds(labels, k, seed, &rep.warnings);
  rep.out_of_fold.resize(labels.size());
  std::vector<double> losses, accs, losses3, accs3;
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train, test;
    for (std::size_t i = 0; i < labels.size(); ++i) (rep.fold_of[i] == f ? test : train).push_back(i);
    std::vector<EmotionDistribution> preds = fit_predict(train, test);
    if (preds.size() != test.size()) throw Error("cross_validate: trainer returned the wrong number of predictions");
    std::vector<Emotion> truth;
    for (auto i : test) truth.push_back(labels[i]);
    for (std::size_t t = 0; t < test.size(); ++t) rep.out_of_fold[test[t]] = preds[t];
    auto ev = evaluate(preds, truth);
    auto ev3 = evaluate_collapsed(preds, truth);
    rep.confusion += ev.confusion;
    rep.folds.push_back({f, train.size(), test.size(), ev.loss, ev.accuracy, ev3.loss, ev3.accuracy});
    losses.push_back(ev.loss);
    accs.push_back(ev.accuracy);
    losses3.push_back(ev3.loss);
    accs3.push_back(ev3.accuracy);
  }
  rep.loss = mean_sd(losses);
  rep.accuracy = mean_sd(accs);
  rep.loss3 = mean_sd(losses3);
  rep.accuracy3 = mean_sd(accs3);
  return rep;
}

}  // namespace emopipe::emoclass

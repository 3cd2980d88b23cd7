#pragma once

#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/emoclass/cart.hpp"
#include "emopipe/emoclass/softmax.hpp"
#include "emopipe/emoclass/tfidf.hpp"
#include "json.hpp"

namespace emopipe::emoclass {

enum class ClassifierKind { Softmax, Cart };

inline std::optional<ClassifierKind> parse_classifier_kind(std::string_view s) {
  if (s == "softmax") return ClassifierKind::Softmax;
  if (s == "cart") return ClassifierKind::Cart;
  return std::nullopt;
}

struct TrainOptions {
  ClassifierKind kind = ClassifierKind::Softmax;
  TfidfConfig tfidf;
  SoftmaxHyper softmax;
  CartHyper cart;
};

// A fitted featurizer bundled with its model; predicts straight from tokens.
struct Classifier {
  TfidfModel featurizer;
  std::variant<SoftmaxModel, TreeModel> model;

  std::string name() const { return std::holds_alternative<SoftmaxModel>(model) ? "softmax" : "cart"; }

  EmotionDistribution predict_features(const SparseVector& x) const {
    return std::visit([&](const auto& m) { return m.predict(x); }, model);
  }
  EmotionDistribution predict(const std::vector<std::string>& tokens) const {
    return predict_features(featurizer.transform(tokens));
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["kind"] = name();
    j["featurizer"] = featurizer.to_json();
    j["model"] = std::visit([](const auto& m) { return m.to_json(); }, model);
    return j;
  }
  static Classifier from_json(const nlohmann::json& j) {
    Classifier c;
    c.featurizer = TfidfModel::from_json(j.at("featurizer"));
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "softmax") c.model = SoftmaxModel::from_json(j.at("model"));
    else if (kind == "cart") c.model = TreeModel::from_json(j.at("model"));
    else throw ValidationError("unknown classifier kind '" + kind + "'");
    return c;
  }
};

inline Classifier train_classifier(const std::vector<std::vector<std::string>>& docs, const std::vector<Emotion>& labels,
                                   const TrainOptions& opt) {
  Classifier c;
  c.featurizer = TfidfModel::fit(docs, opt.tfidf);
  auto x = c.featurizer.transform_all(docs);
  if (opt.kind == ClassifierKind::Softmax) c.model = train_softmax(x, labels, opt.softmax);
  else c.model = train_cart(x, labels, opt.cart);
  return c;
}

inline void save_classifier(const Classifier& c, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model '" + path + "'");
  out << c.to_json().dump() << '\n';
}

inline Classifier load_classifier(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open model '" + path + "'");
  try {
    return Classifier::from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("model '" + path + "': " + e.what());
  }
}

}  // namespace emopipe::emoclass

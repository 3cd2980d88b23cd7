#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/common/kvconfig.hpp"
#include "emopipe/common/strings.hpp"

namespace emopipe::cli {

enum class KeyType { path, text, integer, real, boolean, choice, list };

struct KeySpec {
  std::string_view name;  // "section.key"; top-level keys have no dot
  KeyType type;
  std::vector<std::string_view> choices = {};
  double min = 0.0;  // integer and real keys
};

// Every key the run config accepts.
inline const std::vector<KeySpec>& config_schema() {
  static const std::vector<KeySpec> schema = {
      {"seed", KeyType::integer},
      {"output_dir", KeyType::text},
      {"paths.messages", KeyType::path},
      {"paths.prices", KeyType::path},
      {"paths.security_master", KeyType::path},
      {"paths.dictionary", KeyType::path},
      {"paths.lexicon", KeyType::path},
      {"paths.contractions", KeyType::path},
      {"paths.tickers", KeyType::path},
      {"paths.companies", KeyType::path},
      {"paths.user_handles", KeyType::path},
      {"paths.labeled", KeyType::path},
      {"paths.stopwords", KeyType::path},
      {"paths.finance_dictionary", KeyType::path},
      {"paths.predictions", KeyType::path},
      {"paths.specs", KeyType::path},
      {"preprocess.message_format", KeyType::choice, {"jsonl", "csv"}},
      {"preprocess.automated_threshold", KeyType::integer, {}, 1},
      {"preprocess.min_messages", KeyType::integer, {}, 1},
      {"train.classifier", KeyType::choice, {"softmax", "cart"}},
      {"train.ngram_max", KeyType::integer, {}, 1},
      {"train.min_df", KeyType::integer, {}, 1},
      {"train.stem", KeyType::boolean},
      {"train.epochs", KeyType::integer, {}, 1},
      {"train.l2", KeyType::real},
      {"train.max_depth", KeyType::integer, {}, 1},
      {"train.min_leaf", KeyType::integer, {}, 1},
      {"train.folds", KeyType::integer, {}, 2},
      {"aggregate.weighting", KeyType::choice, {"follower", "equal"}},
      {"aggregate.sentiment_source", KeyType::choice, {"self_tag", "platform"}},
      {"aggregate.log_base", KeyType::real},
      {"aggregate.min_messages", KeyType::integer, {}, 1},
      {"aggregate.content_splits", KeyType::boolean},
      {"panel.session", KeyType::choice, {"premarket", "market"}},
      {"panel.momentum_days", KeyType::integer, {}, 1},
      {"panel.volatility_days", KeyType::integer, {}, 2},
      {"panel.volatility_window", KeyType::choice, {"calendar", "trading"}},
      {"panel.leads", KeyType::integer},
      {"eventstudy.tickers", KeyType::list},
      {"eventstudy.emotions", KeyType::list},
      {"eventstudy.window", KeyType::integer, {}, 2},
      {"eventstudy.session", KeyType::choice, {"premarket", "market"}},
      {"summarize.columns", KeyType::list},
      {"summarize.fe", KeyType::list},
  };
  return schema;
}

inline const KeySpec* find_key(std::string_view name) {
  for (const auto& k : config_schema())
    if (k.name == name) return &k;
  return nullptr;
}

// Validated key-value run configuration. Relative paths resolve against the
// directory holding the config file.
class RunConfig {
 public:
  std::string source;
  std::string hash;
  std::filesystem::path base;

  bool has(std::string_view key) const { return values_.count(std::string(key)) > 0; }

  std::string text(std::string_view key, std::string fallback = {}) const {
    auto it = values_.find(std::string(key));
    return it == values_.end() ? fallback : it->second;
  }
  std::string path(std::string_view key) const { return resolve(text(key)); }
  std::int64_t integer(std::string_view key, std::int64_t fallback) const {
    return has(key) ? *str::parse_int(text(key)) : fallback;
  }
  double real(std::string_view key, double fallback) const { return has(key) ? *str::parse_double(text(key)) : fallback; }
  bool boolean(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    auto v = text(key);
    return v == "true" || v == "yes" || v == "1";
  }
  std::vector<std::string> list(std::string_view key) const { return has(key) ? kv::list(text(key)) : std::vector<std::string>{}; }

  std::string resolve(const std::string& p) const {
    if (p.empty()) return p;
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base / fp).lexically_normal().string();
  }

  std::string where(std::string_view key) const {
    auto it = lines_.find(std::string(key));
    return it == lines_.end() ? source : source + ":" + std::to_string(it->second);
  }

  // Every key in `keys` must be set and, for paths, name an existing file.
  // All problems are reported in one ValidationError.
  void require(const std::vector<std::string_view>& keys, std::string_view command) const {
    std::vector<std::string> problems;
    for (auto k : keys) {
      if (!has(k)) {
        problems.push_back(source + ": key '" + std::string(k) + "' is required by " + std::string(command));
        continue;
      }
      const KeySpec* spec = find_key(k);
      if (spec && spec->type == KeyType::path && !std::filesystem::is_regular_file(path(k)))
        problems.push_back(where(k) + ": key '" + std::string(k) + "': file not found '" + path(k) + "'");
    }
    if (!problems.empty()) throw ValidationError(str::join(problems, "\n"));
  }

  // Optional path keys that are set must exist.
  void require_if_set(const std::vector<std::string_view>& keys) const {
    std::vector<std::string_view> present;
    for (auto k : keys)
      if (has(k)) present.push_back(k);
    require(present, "");
  }

  static RunConfig from(const kv::File& file, const std::filesystem::path& base) {
    RunConfig cfg;
    cfg.source = file.source;
    cfg.hash = file.hash();
    cfg.base = base;
    std::vector<std::string> problems;
    for (const auto& sec : file.sections)
      for (const auto& e : sec.entries) {
        const std::string name = sec.name.empty() ? e.key : sec.name + "." + e.key;
        const std::string at = file.source + ":" + std::to_string(e.line) + ": key '" + name + "'";
        const KeySpec* spec = find_key(name);
        if (!spec) {
          problems.push_back(at + " is not recognized");
          continue;
        }
        if (auto why = check(*spec, e.value)) {
          problems.push_back(at + ": " + *why);
          continue;
        }
        cfg.values_[name] = e.value;
        cfg.lines_[name] = e.line;
      }
    if (!problems.empty()) throw ValidationError(str::join(problems, "\n"));
    return cfg;
  }

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, std::size_t> lines_;

  static std::optional<std::string> check(const KeySpec& spec, const std::string& v) {
    switch (spec.type) {
      case KeyType::integer: {
        auto n = str::parse_int(v);
        if (!n) return "expected an integer, got '" + v + "'";
        if (static_cast<double>(*n) < spec.min) return "must be at least " + std::to_string(static_cast<long long>(spec.min));
        return std::nullopt;
      }
      case KeyType::real: {
        auto d = str::parse_double(v);
        if (!d) return "expected a number, got '" + v + "'";
        if (*d < spec.min) return "must be at least " + str::format_double(spec.min);
        return std::nullopt;
      }
      case KeyType::boolean:
        if (v == "true" || v == "false" || v == "yes" || v == "no" || v == "1" || v == "0") return std::nullopt;
        return "expected true or false, got '" + v + "'";
      case KeyType::choice:
        for (auto c : spec.choices)
          if (v == c) return std::nullopt;
        {
          std::vector<std::string> opts(spec.choices.begin(), spec.choices.end());
          return "expected one of " + str::join(opts, ", ") + ", got '" + v + "'";
        }
      case KeyType::path:
      case KeyType::text:
        if (v.empty()) return "empty value";
        return std::nullopt;
      case KeyType::list:
        if (kv::list(v).empty()) return "empty list";
        return std::nullopt;
    }
    return std::nullopt;
  }
};

inline RunConfig load_run_config(const std::string& path) {
  auto file = kv::load(path);
  auto base = std::filesystem::absolute(path).parent_path();
  return RunConfig::from(file, base);
}

}  // namespace emopipe::cli

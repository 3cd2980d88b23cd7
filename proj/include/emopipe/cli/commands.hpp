#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "emopipe/aggregate/content.hpp"
#include "emopipe/aggregate/event_study.hpp"
#include "emopipe/aggregate/firm_session.hpp"
#include "emopipe/cli/config.hpp"
#include "emopipe/common/csv.hpp"
#include "emopipe/common/metadata.hpp"
#include "emopipe/common/parallel.hpp"
#include "emopipe/corpus/calendar.hpp"
#include "emopipe/corpus/filters.hpp"
#include "emopipe/corpus/loader.hpp"
#include "emopipe/corpus/security_master.hpp"
#include "emopipe/corpus/session.hpp"
#include "emopipe/econo/join.hpp"
#include "emopipe/econo/model.hpp"
#include "emopipe/econo/panel.hpp"
#include "emopipe/econo/report.hpp"
#include "emopipe/econo/returns.hpp"
#include "emopipe/econo/spec.hpp"
#include "emopipe/econo/summary.hpp"
#include "emopipe/emoclass/classifier.hpp"
#include "emopipe/emoclass/cross_validate.hpp"
#include "emopipe/emoclass/evaluate.hpp"
#include "emopipe/emoclass/interchange.hpp"
#include "emopipe/emoclass/labeled.hpp"
#include "emopipe/textprep/normalize.hpp"

namespace emopipe::cli {

// Artifact names inside the output directory.
inline constexpr const char* kCleanFile = "clean_messages.jsonl";
inline constexpr const char* kRestrictionFile = "restriction_report.csv";
inline constexpr const char* kModelFile = "model.json";
inline constexpr const char* kCvReportFile = "cv_report.txt";
inline constexpr const char* kCvFoldsFile = "cv_folds.csv";
inline constexpr const char* kConfusionFile = "confusion.csv";
inline constexpr const char* kPredictionsFile = "predictions.jsonl";
inline constexpr const char* kFirmSessionFile = "firm_sessions.csv";
inline constexpr const char* kPanelFile = "panel.csv";
inline constexpr const char* kRegressionCsv = "regression.csv";
inline constexpr const char* kRegressionTable = "regression.txt";
inline constexpr const char* kEventStudyFile = "event_study.csv";
inline constexpr const char* kSummaryCsv = "summary.csv";
inline constexpr const char* kSummaryTable = "summary.txt";
inline constexpr const char* kCorrelationCsv = "correlation.csv";
inline constexpr const char* kCorrelationTable = "correlation.txt";

struct Context {
  RunConfig cfg;
  std::filesystem::path out;
  std::uint64_t seed = 42;
  bool strict = false;
  std::ostream* log = nullptr;

  RunMetadata meta(std::string_view command) const {
    RunMetadata m;
    m.config_hash = cfg.hash;
    m.seed = seed;
    m.extra = "command=" + std::string(command);
    return m;
  }
  std::string file(const char* name) const { return (out / name).string(); }
  std::string input(const char* name) const {
    auto p = file(name);
    if (!std::filesystem::is_regular_file(p))
      throw ValidationError("missing upstream artifact '" + p + "'; run the earlier stage first");
    return p;
  }
  void say(const std::string& line) const {
    if (log) *log << line << '\n';
  }
};

namespace detail {

class StageTimer {
 public:
  StageTimer(const Context& ctx, std::string command) : ctx_(ctx), command_(std::move(command)) {}
  void mark(const std::string& stage, std::size_t count) {
    auto now = std::chrono::steady_clock::now();
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now - last_).count();
    last_ = now;
    ctx_.say(command_ + ": " + stage + ": " + std::to_string(count) + " (" + std::to_string(ms) + " ms)");
  }

 private:
  const Context& ctx_;
  std::string command_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

inline std::unordered_set<std::string> lowered_set(const std::string& path) {
  std::unordered_set<std::string> out;
  for (const auto& w : textprep::load_word_set(path)) out.insert(str::to_lower(w));
  return out;
}

inline textprep::Resources load_resources(const Context& ctx, std::string_view command) {
  ctx.cfg.require({"paths.dictionary", "paths.lexicon", "paths.contractions"}, command);
  ctx.cfg.require_if_set({"paths.tickers", "paths.companies", "paths.user_handles"});
  textprep::Resources r;
  r.dictionary = textprep::load_frequency_dictionary(ctx.cfg.path("paths.dictionary"));
  r.lexicon = textprep::load_lexicon(ctx.cfg.path("paths.lexicon"));
  r.contractions = textprep::load_contractions(ctx.cfg.path("paths.contractions"));
  if (ctx.cfg.has("paths.tickers")) r.names.tickers = lowered_set(ctx.cfg.path("paths.tickers"));
  if (ctx.cfg.has("paths.companies")) r.names.companies = lowered_set(ctx.cfg.path("paths.companies"));
  if (ctx.cfg.has("paths.user_handles")) r.names.user_handles = lowered_set(ctx.cfg.path("paths.user_handles"));
  return r;
}

inline corpus::TradingCalendar load_calendar(const Context& ctx) {
  auto prices = econo::load_panel(ctx.cfg.path("paths.prices"));
  return corpus::TradingCalendar(prices.date);
}

inline corpus::LoadResult load_raw(const Context& ctx) {
  auto format = corpus::parse_message_format(ctx.cfg.text("preprocess.message_format", "jsonl"));
  auto res = corpus::load_messages(ctx.cfg.path("paths.messages"), format, {ctx.strict});
  for (const auto& w : res.warnings) ctx.say("warning: " + w);
  return res;
}

inline corpus::Session session_of(const Context& ctx, std::string_view key) {
  return corpus::parse_session(ctx.cfg.text(key, "premarket"));
}

inline std::vector<textprep::CleanMessage> normalize_all(const std::vector<std::string>& texts,
                                                         const std::vector<std::string>& ids,
                                                         const textprep::Resources& r) {
  std::vector<textprep::CleanMessage> out(texts.size());
  parallel_for(texts.size(), [&](std::size_t i) { out[i] = textprep::normalize(texts[i], r, ids[i]); });
  return out;
}

inline emoclass::TrainOptions train_options(const Context& ctx) {
  const auto& c = ctx.cfg;
  emoclass::TrainOptions opt;
  opt.kind = *emoclass::parse_classifier_kind(c.text("train.classifier", "softmax"));
  opt.tfidf.ngram_max = static_cast<int>(c.integer("train.ngram_max", opt.tfidf.ngram_max));
  opt.tfidf.min_df = static_cast<std::size_t>(c.integer("train.min_df", static_cast<std::int64_t>(opt.tfidf.min_df)));
  opt.tfidf.stem = c.boolean("train.stem", opt.tfidf.stem);
  if (c.has("paths.stopwords")) {
    c.require({"paths.stopwords"}, "train");
    auto words = lowered_set(c.path("paths.stopwords"));
    opt.tfidf.stopwords = std::set<std::string>(words.begin(), words.end());
  }
  opt.softmax.epochs = static_cast<std::size_t>(c.integer("train.epochs", static_cast<std::int64_t>(opt.softmax.epochs)));
  opt.softmax.l2 = c.real("train.l2", opt.softmax.l2);
  opt.cart.max_depth = static_cast<std::size_t>(c.integer("train.max_depth", static_cast<std::int64_t>(opt.cart.max_depth)));
  opt.cart.min_leaf = static_cast<std::size_t>(c.integer("train.min_leaf", static_cast<std::int64_t>(opt.cart.min_leaf)));
  return opt;
}

struct LabeledTokens {
  std::vector<std::vector<std::string>> docs;
  std::vector<emoclass::Emotion> labels;
};

inline LabeledTokens load_labeled_tokens(const Context& ctx, std::string_view command) {
  ctx.cfg.require({"paths.labeled"}, command);
  auto resources = load_resources(ctx, command);
  auto rows = emoclass::load_labeled(ctx.cfg.path("paths.labeled"));
  if (rows.empty()) throw ValidationError(ctx.cfg.path("paths.labeled") + ": no labeled rows");
  std::vector<std::string> texts, ids;
  LabeledTokens out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    texts.push_back(rows[i].text);
    ids.push_back(std::to_string(i));
    out.labels.push_back(rows[i].label);
  }
  for (auto& m : normalize_all(texts, ids, resources)) out.docs.push_back(std::move(m.tokens));
  return out;
}

inline void write_clean(std::ostream& out, const std::vector<textprep::CleanMessage>& msgs, const RunMetadata& meta) {
  meta.write_json_line(out);
  for (const auto& m : msgs) out << textprep::to_json(m).dump() << '\n';
}

inline std::vector<aggregate::FirmSessionRecord> load_sessions(const Context& ctx) {
  return aggregate::load_firm_sessions(ctx.input(kFirmSessionFile));
}

}  // namespace detail

// Load -> single ticker -> normalize -> automated posts -> security master ->
// session activity. Writes CleanMessage JSONL and the restriction report.
inline void cmd_preprocess(const Context& ctx) {
  ctx.cfg.require({"paths.messages", "paths.dictionary", "paths.lexicon", "paths.contractions"}, "preprocess");
  ctx.cfg.require_if_set({"paths.security_master", "paths.prices"});
  detail::StageTimer timer(ctx, "preprocess");
  auto resources = detail::load_resources(ctx, "preprocess");
  timer.mark("resources loaded", resources.dictionary.size());

  corpus::RestrictionReport report;
  auto loaded = detail::load_raw(ctx);
  report.record(corpus::kStageAll, loaded.messages.size());
  timer.mark(corpus::kStageAll, loaded.messages.size());

  auto msgs = corpus::filter_single_ticker(loaded.messages);
  report.record(corpus::kStageSingleTicker, msgs.size());
  timer.mark(corpus::kStageSingleTicker, msgs.size());

  std::vector<std::string> bodies, ids;
  for (const auto& m : msgs) {
    bodies.push_back(m.body);
    ids.push_back(m.message_id);
  }
  auto clean = detail::normalize_all(bodies, ids, resources);
  timer.mark("normalized", clean.size());

  std::vector<std::string> normalized;
  for (const auto& c : clean) normalized.push_back(c.normalized_text);
  const auto threshold = static_cast<std::size_t>(
      ctx.cfg.integer("preprocess.automated_threshold", static_cast<std::int64_t>(corpus::kAutomatedThreshold)));
  auto flagged = corpus::detect_automated(msgs, normalized, threshold);
  std::vector<std::size_t> keep = corpus::drop_automated(msgs, normalized, flagged);
  report.record(corpus::kStageNotAutomated, keep.size());
  timer.mark(corpus::kStageNotAutomated, keep.size());

  if (ctx.cfg.has("paths.security_master")) {
    auto master = corpus::load_security_master(ctx.cfg.path("paths.security_master"));
    corpus::SecurityFilterStats stats;
    keep = corpus::apply_security_filters(keep, master, [&](std::size_t i) { return msgs[i].cashtags.front(); }, &stats);
    report.record(corpus::kStageSecurity, keep.size());
    timer.mark(corpus::kStageSecurity, keep.size());
    ctx.say("preprocess: tickers missing from security master: " + std::to_string(stats.missing_ticker) +
            " messages; rejected by status/type/exchange: " + std::to_string(stats.rejected));
  }

  if (ctx.cfg.has("paths.prices")) {
    auto calendar = detail::load_calendar(ctx);
    std::map<corpus::SessionKey, std::vector<std::size_t>> groups;
    std::size_t outside = 0;
    for (auto i : keep) {
      try {
        auto slot = corpus::assign_session(msgs[i].local, calendar);
        groups[{msgs[i].cashtags.front(), slot.trade_date, slot.session}].push_back(i);
      } catch (const corpus::OutOfRangeError&) {
        ++outside;
      }
    }
    const auto floor = static_cast<std::size_t>(
        ctx.cfg.integer("preprocess.min_messages", static_cast<std::int64_t>(corpus::kMinSessionMessages)));
    groups = corpus::enforce_min_activity(std::move(groups), floor);
    std::vector<std::size_t> active;
    for (const auto& [key, members] : groups) active.insert(active.end(), members.begin(), members.end());
    std::sort(active.begin(), active.end());
    keep = std::move(active);
    report.record(corpus::kStageMinActivity, keep.size());
    timer.mark(corpus::kStageMinActivity, keep.size());
    if (outside) ctx.say("preprocess: " + std::to_string(outside) + " messages outside the trading calendar dropped");
  }

  std::vector<textprep::CleanMessage> kept;
  for (auto i : keep) kept.push_back(clean[i]);
  std::filesystem::create_directories(ctx.out);
  const auto meta = ctx.meta("preprocess");
  {
    auto f = csv::open_output(ctx.file(kCleanFile));
    detail::write_clean(f, kept, meta);
  }
  {
    auto f = csv::open_output(ctx.file(kRestrictionFile));
    meta.write_comment(f);
    report.write_csv(f);
  }
  timer.mark("written", kept.size());
}

inline void cmd_train(const Context& ctx) {
  detail::StageTimer timer(ctx, "train");
  auto data = detail::load_labeled_tokens(ctx, "train");
  timer.mark("labeled rows", data.docs.size());
  auto model = emoclass::train_classifier(data.docs, data.labels, detail::train_options(ctx));
  timer.mark("trained " + model.name(), model.featurizer.size());
  auto j = model.to_json();
  const auto meta = ctx.meta("train");
  j["_meta"] = {{"version", kVersion}, {"config_hash", meta.config_hash}, {"seed", meta.seed}};
  std::filesystem::create_directories(ctx.out);
  auto f = csv::open_output(ctx.file(kModelFile));
  f << j.dump() << '\n';
}

// k-fold cross-validation with per-fold and mean [SD] loss and accuracy, plus
// the pooled row-normalized confusion matrix.
inline emoclass::CvReport cmd_evaluate(const Context& ctx) {
  detail::StageTimer timer(ctx, "evaluate");
  auto data = detail::load_labeled_tokens(ctx, "evaluate");
  const auto opt = detail::train_options(ctx);
  const auto k = static_cast<std::size_t>(ctx.cfg.integer("train.folds", 5));
  auto rep = emoclass::cross_validate(data.labels, k, ctx.seed, [&](const auto& train, const auto& test) {
    std::vector<std::vector<std::string>> docs;
    std::vector<emoclass::Emotion> labels;
    for (auto i : train) {
      docs.push_back(data.docs[i]);
      labels.push_back(data.labels[i]);
    }
    auto model = emoclass::train_classifier(docs, labels, opt);
    std::vector<emoclass::EmotionDistribution> preds;
    for (auto i : test) preds.push_back(model.predict(data.docs[i]));
    return preds;
  });
  for (const auto& w : rep.warnings) ctx.say("warning: " + w);
  timer.mark("folds", rep.folds.size());

  std::filesystem::create_directories(ctx.out);
  const auto meta = ctx.meta("evaluate");
  const std::string name = opt.kind == emoclass::ClassifierKind::Softmax ? "softmax" : "cart";
  {
    auto f = csv::open_output(ctx.file(kCvFoldsFile));
    meta.write_comment(f);
    csv::write_row(f, {"fold", "train", "test", "loss", "accuracy", "loss3", "accuracy3"});
    for (const auto& m : rep.folds)
      csv::write_row(f, {std::to_string(m.fold + 1), std::to_string(m.train_size), std::to_string(m.test_size),
                         str::format_double(m.loss), str::format_double(m.accuracy), str::format_double(m.loss3),
                         str::format_double(m.accuracy3)});
    csv::write_row(f, {"mean", "", "", str::format_double(rep.loss.mean), str::format_double(rep.accuracy.mean),
                       str::format_double(rep.loss3.mean), str::format_double(rep.accuracy3.mean)});
    csv::write_row(f, {"sd", "", "", str::format_double(rep.loss.sd), str::format_double(rep.accuracy.sd),
                       str::format_double(rep.loss3.sd), str::format_double(rep.accuracy3.sd)});
  }
  {
    auto f = csv::open_output(ctx.file(kConfusionFile));
    meta.write_comment(f);
    rep.confusion.write_csv(f);
  }
  {
    auto f = csv::open_output(ctx.file(kCvReportFile));
    meta.write_comment(f);
    auto ms = [](const emoclass::MeanSd& v) { return str::fixed(v.mean, 3) + " [" + str::fixed(v.sd, 3) + "]"; };
    f << "Model: " << name << "  folds=" << k << "  n=" << data.labels.size() << "  seed=" << ctx.seed << "\n\n";
    std::vector<std::vector<std::string>> cells = {{"", "Loss", "Accuracy", "Loss (3-class)", "Accuracy (3-class)"}};
    for (const auto& m : rep.folds)
      cells.push_back({"Fold " + std::to_string(m.fold + 1), str::fixed(m.loss, 3), str::fixed(m.accuracy, 3),
                       str::fixed(m.loss3, 3), str::fixed(m.accuracy3, 3)});
    cells.push_back({name, ms(rep.loss), ms(rep.accuracy), ms(rep.loss3), ms(rep.accuracy3)});
    econo::detail::write_aligned(f, cells);
    f << "Mean [SD] across folds.\n";
  }
  return rep;
}

inline void cmd_predict(const Context& ctx) {
  detail::StageTimer timer(ctx, "predict");
  auto model = emoclass::load_classifier(ctx.input(kModelFile));
  auto clean = textprep::load_clean_messages(ctx.input(kCleanFile));
  std::vector<emoclass::PredictionRecord> recs(clean.size());
  const std::string source = "emopipe-" + model.name();
  parallel_for(clean.size(), [&](std::size_t i) {
    recs[i] = {clean[i].message_id, model.predict(clean[i].tokens), source};
  });
  timer.mark("predicted", recs.size());
  const auto meta = ctx.meta("predict");
  auto f = csv::open_output(ctx.file(kPredictionsFile));
  emoclass::write_predictions(f, recs, &meta);
}

// Firm-session aggregates over the preprocessed sample.
inline aggregate::BuildResult cmd_aggregate(const Context& ctx) {
  ctx.cfg.require({"paths.messages", "paths.prices"}, "aggregate");
  ctx.cfg.require_if_set({"paths.predictions", "paths.finance_dictionary"});
  detail::StageTimer timer(ctx, "aggregate");
  auto clean = textprep::load_clean_messages(ctx.input(kCleanFile));
  std::unordered_map<std::string, std::size_t> clean_at;
  for (std::size_t i = 0; i < clean.size(); ++i) clean_at[clean[i].message_id] = i;

  auto loaded = detail::load_raw(ctx);
  std::vector<corpus::RawMessage> msgs;
  std::vector<std::size_t> clean_index;
  for (auto& m : loaded.messages)
    if (auto it = clean_at.find(m.message_id); it != clean_at.end()) {
      clean_index.push_back(it->second);
      msgs.push_back(std::move(m));
    }
  if (msgs.size() != clean.size())
    throw ValidationError(std::to_string(clean.size() - msgs.size()) +
                          " preprocessed messages are missing from the messages file");
  timer.mark("messages", msgs.size());

  const std::string pred_path =
      ctx.cfg.has("paths.predictions") ? ctx.cfg.path("paths.predictions") : ctx.input(kPredictionsFile);
  aggregate::PredictionMap preds;
  for (auto& r : emoclass::load_predictions(pred_path)) preds[r.message_id] = r.probs;
  timer.mark("predictions", preds.size());

  std::vector<aggregate::ContentTag> tags;
  const bool splits = ctx.cfg.has("paths.finance_dictionary") && ctx.cfg.boolean("aggregate.content_splits", true);
  if (splits) {
    auto dict = aggregate::load_finance_dictionary(ctx.cfg.path("paths.finance_dictionary"));
    for (auto i : clean_index) tags.push_back(aggregate::tag_content(clean[i], dict));
  }

  aggregate::AggregateOptions opt;
  opt.weighting = *aggregate::parse_weighting(ctx.cfg.text("aggregate.weighting", "follower"));
  opt.sentiment = *aggregate::parse_sentiment_source(ctx.cfg.text("aggregate.sentiment_source", "self_tag"));
  opt.log_base = ctx.cfg.real("aggregate.log_base", opt.log_base);
  const auto floor = static_cast<std::size_t>(
      ctx.cfg.integer("aggregate.min_messages", static_cast<std::int64_t>(corpus::kMinSessionMessages)));
  auto res = aggregate::build_firm_sessions(msgs, preds, detail::load_calendar(ctx), opt, splits ? &tags : nullptr, floor);
  timer.mark("firm sessions", res.records.size());
  if (res.out_of_calendar) ctx.say("aggregate: " + std::to_string(res.out_of_calendar) + " messages outside the calendar");
  if (res.sessions_below_minimum)
    ctx.say("aggregate: " + std::to_string(res.sessions_below_minimum) + " sessions below the activity floor");
  const auto meta = ctx.meta("aggregate");
  auto f = csv::open_output(ctx.file(kFirmSessionFile));
  aggregate::write_firm_sessions(f, res.records, &meta);
  return res;
}

// Prices -> returns and controls -> joined session emotions.
inline econo::Panel cmd_panel(const Context& ctx) {
  ctx.cfg.require({"paths.prices"}, "panel");
  detail::StageTimer timer(ctx, "panel");
  auto p = econo::load_panel(ctx.cfg.path("paths.prices"));
  econo::ReturnOptions opt;
  opt.momentum_days = static_cast<std::size_t>(ctx.cfg.integer("panel.momentum_days", static_cast<std::int64_t>(opt.momentum_days)));
  opt.volatility_days =
      static_cast<std::size_t>(ctx.cfg.integer("panel.volatility_days", static_cast<std::int64_t>(opt.volatility_days)));
  opt.volatility_window = *econo::parse_volatility_window(ctx.cfg.text("panel.volatility_window", "calendar"));
  opt.leads = static_cast<std::size_t>(ctx.cfg.integer("panel.leads", static_cast<std::int64_t>(opt.leads)));
  econo::compute_returns(p, opt);
  auto stats = econo::attach_emotions(p, detail::load_sessions(ctx), detail::session_of(ctx, "panel.session"));
  timer.mark("rows", p.rows());
  ctx.say("panel: " + std::to_string(stats.matched_rows) + " rows with emotions; " +
          std::to_string(stats.unmatched_sessions) + " sessions without a price row");
  const auto meta = ctx.meta("panel");
  auto f = csv::open_output(ctx.file(kPanelFile));
  econo::write_panel(f, p, &meta);
  return p;
}

inline std::vector<econo::RegressionResult> cmd_regress(const Context& ctx) {
  ctx.cfg.require({"paths.specs"}, "regress");
  detail::StageTimer timer(ctx, "regress");
  auto p = econo::load_panel(ctx.input(kPanelFile));
  auto specs = econo::load_specs(ctx.cfg.path("paths.specs"));
  for (const auto& s : specs) econo::validate_spec(s, p);
  std::vector<econo::RegressionResult> results;
  for (const auto& s : specs) {
    for (auto& r : econo::fit_spec(p, s)) results.push_back(std::move(r));
    timer.mark("spec [" + s.name + "]", results.back().n);
  }
  const auto meta = ctx.meta("regress");
  {
    auto f = csv::open_output(ctx.file(kRegressionCsv));
    econo::write_results_csv(f, results, &meta);
  }
  {
    auto f = csv::open_output(ctx.file(kRegressionTable));
    econo::write_results_table(f, results, 4, &meta);
  }
  return results;
}

// Daily emotion shares with trailing z-scores, one series per ticker and emotion.
inline std::vector<aggregate::EmotionSeries> cmd_eventstudy(const Context& ctx) {
  auto records = detail::load_sessions(ctx);
  auto tickers = ctx.cfg.list("eventstudy.tickers");
  if (tickers.empty()) {
    std::set<std::string> all;
    for (const auto& r : records) all.insert(r.key.ticker);
    tickers.assign(all.begin(), all.end());
  }
  std::vector<emoclass::Emotion> emotions;
  for (const auto& name : ctx.cfg.has("eventstudy.emotions") ? ctx.cfg.list("eventstudy.emotions")
                                                             : std::vector<std::string>{"happy"}) {
    auto e = emoclass::parse_emotion(str::to_lower(name));
    if (!e) throw ValidationError(ctx.cfg.where("eventstudy.emotions") + ": unknown emotion '" + name + "'");
    emotions.push_back(*e);
  }
  const auto window = static_cast<std::size_t>(
      ctx.cfg.integer("eventstudy.window", static_cast<std::int64_t>(aggregate::kDefaultEventWindow)));
  const auto session = detail::session_of(ctx, "eventstudy.session");
  std::vector<aggregate::EmotionSeries> series;
  for (const auto& t : tickers)
    for (auto e : emotions) series.push_back(aggregate::emotion_time_series(records, t, e, window, session));
  const auto meta = ctx.meta("eventstudy");
  auto f = csv::open_output(ctx.file(kEventStudyFile));
  aggregate::write_event_study(f, series, &meta);
  return series;
}

inline void cmd_summarize(const Context& ctx) {
  auto p = econo::load_panel(ctx.input(kPanelFile));
  auto cols = ctx.cfg.list("summarize.columns");
  if (cols.empty())
    for (const char* c : {"valence", "sentiment", "open_close", "close_open", "lag_open_close", "ret_m20_m1",
                          "volatility", "log_mcap"})
      if (p.has(c)) cols.emplace_back(c);
  std::vector<std::string> fe = {"firm", "date"};
  if (ctx.cfg.has("summarize.fe")) fe = ctx.cfg.list("summarize.fe");
  if (fe.size() == 1 && fe.front() == "none") fe.clear();
  auto rows = econo::summary_stats(p, cols, fe);
  auto corr = econo::correlation_matrix(p, cols);
  const auto meta = ctx.meta("summarize");
  {
    auto f = csv::open_output(ctx.file(kSummaryCsv));
    econo::write_summary_csv(f, rows, &meta);
  }
  {
    auto f = csv::open_output(ctx.file(kSummaryTable));
    econo::write_summary_table(f, rows, 3, &meta);
  }
  {
    auto f = csv::open_output(ctx.file(kCorrelationCsv));
    econo::write_correlation_csv(f, corr, &meta);
  }
  {
    auto f = csv::open_output(ctx.file(kCorrelationTable));
    econo::write_correlation_table(f, corr, 2, &meta);
  }
}

// preprocess -> train -> evaluate -> predict -> aggregate -> panel -> regress,
// then eventstudy and summarize.
inline void cmd_run(const Context& ctx) {
  cmd_preprocess(ctx);
  cmd_train(ctx);
  cmd_evaluate(ctx);
  cmd_predict(ctx);
  cmd_aggregate(ctx);
  cmd_panel(ctx);
  cmd_regress(ctx);
  cmd_eventstudy(ctx);
  cmd_summarize(ctx);
}

}  // namespace emopipe::cli

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "emopipe/aggregate/content.hpp"
#include "emopipe/aggregate/event_study.hpp"
#include "emopipe/aggregate/firm_session.hpp"
#include "emopipe/aggregate/valence.hpp"
#include "emopipe/common/rng.hpp"

using namespace emopipe;
using namespace emopipe::aggregate;

namespace {

EmotionDistribution dist(std::array<double, 7> p) {
  EmotionDistribution d;
  d.p = p;
  return d;
}

EmotionDistribution random_distribution(Rng& rng) {
  EmotionDistribution d;
  double s = 0.0;
  for (double& p : d.p) s += p = rng.uniform() + 1e-3;
  for (double& p : d.p) p /= s;
  return d;
}

// Happy-only mass h, rest neutral.
EmotionDistribution happy(double h) { return dist({1.0 - h, h, 0, 0, 0, 0, 0}); }

SessionKey key() { return {"AMC", make_date(2021, 1, 28), corpus::Session::premarket}; }

textprep::CleanMessage clean(std::vector<std::string> tokens, bool link = false, bool rt = false) {
  textprep::CleanMessage m;
  m.tokens = std::move(tokens);
  m.has_hyperlink = link;
  m.is_retweet = rt;
  return m;
}

}  // namespace

TEST(Valence, PublishedExamples) {
  // "not feeling it :)" tuple, neutral..fear
  EXPECT_NEAR(valence(dist({0.064, 0.305, 0.431, 0.048, 0.03, 0.038, 0.084})), -0.288, 1e-9);
  EXPECT_NEAR(valence(EmotionDistribution::uniform()), -3.0 / 7.0, 1e-15);
  // Summary-table means; they sum to 1.001 after rounding.
  const double v = valence(dist({0.511, 0.246, 0.036, 0.024, 0.037, 0.062, 0.085}));
  EXPECT_NEAR(v, 0.064, 1e-12);
  EXPECT_LE(std::abs(v - 0.065), 0.001 + 1e-12);
}

TEST(Valence, BoundedOnTheSimplex) {
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const double v = valence(random_distribution(rng));
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_EQ(valence(EmotionDistribution::one_hot(Emotion::Happy)), 1.0);
  EXPECT_EQ(valence(EmotionDistribution::one_hot(Emotion::Fear)), -1.0);
  EXPECT_EQ(valence(EmotionDistribution::one_hot(Emotion::Surprise)), 0.0);
}

TEST(FollowerWeight, Examples) {
  EXPECT_EQ(follower_weight(0), 1.0);
  EXPECT_NEAR(follower_weight(std::numbers::e - 1.0), 2.0, 1e-15);
  EXPECT_NEAR(follower_weight(100), 5.6152, 1e-4);  // quoted to four places
  EXPECT_NEAR(follower_weight(100), 1.0 + std::log(101.0), 1e-15);
  EXPECT_NEAR(follower_weight(99, 10.0), 3.0, 1e-15);
  EXPECT_THROW(follower_weight(-1), ValidationError);
  EXPECT_EQ(message_weight(Weighting::equal, 1e6), 1.0);
}

TEST(FollowerWeight, MonotoneNondecreasing) {
  double prev = 0.0;
  for (double n = 0; n < 1e6; n = n * 1.7 + 1) {
    const double w = follower_weight(n);
    EXPECT_GE(w, prev);
    EXPECT_GE(w, 1.0);
    prev = w;
  }
}

TEST(FirmSession, HandArithmetic) {
  PredictionMap preds = {{"a", happy(0.4)}, {"b", happy(0.6)}, {"c", happy(0.8)}};
  auto eq = aggregate_firm_session(key(), {{"a"}, {"b"}}, preds, {.weighting = Weighting::equal});
  EXPECT_NEAR(eq.mean[Emotion::Happy], 0.5, 1e-15);
  EXPECT_EQ(eq.n, 2u);
  // Follower counts 0 and e^2 - 1 give weights 1 and 3.
  std::vector<SessionMessage> msgs = {{"a", 0.0}, {"c", std::exp(2.0) - 1.0}};
  auto fw = aggregate_firm_session(key(), msgs, preds);
  EXPECT_NEAR(fw.mean[Emotion::Happy], 0.7, 1e-12);
  EXPECT_NEAR(fw.valence, 0.7, 1e-12);
}

TEST(FirmSession, IdempotentSimplexAndLinear) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto same = random_distribution(rng);
    PredictionMap preds;
    std::vector<SessionMessage> msgs;
    for (int i = 0; i < 12; ++i) {
      const std::string id = "m" + std::to_string(trial) + "_" + std::to_string(i);
      preds[id] = trial % 2 ? same : random_distribution(rng);
      msgs.push_back({id, std::floor(rng.uniform(0, 5000))});
    }
    auto r = aggregate_firm_session(key(), msgs, preds);
    EXPECT_TRUE(r.mean.valid());
    EXPECT_NEAR(r.mean.sum(), 1.0, 1e-12);
    if (trial % 2) {
      for (std::size_t c = 0; c < 7; ++c) EXPECT_NEAR(r.mean.p[c], same.p[c], 1e-15);
    }
    // valence of the mean equals the weighted mean of per-message valences
    double num = 0.0, den = 0.0;
    for (const auto& m : msgs) {
      const double w = follower_weight(m.follower_count);
      num += w * valence(preds[m.message_id]);
      den += w;
    }
    EXPECT_NEAR(r.valence, num / den, 1e-12);
    EXPECT_EQ(r.valence, valence(r.mean));
  }
}

TEST(FirmSession, OrderIndependentBitwise) {
  Rng rng(8);
  PredictionMap preds;
  std::vector<SessionMessage> msgs;
  for (int i = 0; i < 40; ++i) {
    const std::string id = "id" + std::to_string(i);
    preds[id] = random_distribution(rng);
    msgs.push_back({id, std::floor(rng.uniform(0, 1e5)), double(int(rng.below(3))) - 1.0});
  }
  auto a = aggregate_firm_session(key(), msgs, preds);
  for (int rep = 0; rep < 5; ++rep) {
    rng.shuffle(msgs);
    auto b = aggregate_firm_session(key(), msgs, preds);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.sentiment, b.sentiment);
  }
}

TEST(FirmSession, EqualMatchesFollowerWhenCountsAreZero) {
  Rng rng(12);
  PredictionMap preds;
  std::vector<SessionMessage> msgs;
  for (int i = 0; i < 15; ++i) {
    preds["x" + std::to_string(i)] = random_distribution(rng);
    msgs.push_back({"x" + std::to_string(i), 0.0, 1.0});
  }
  auto f = aggregate_firm_session(key(), msgs, preds, {.weighting = Weighting::follower});
  auto e = aggregate_firm_session(key(), msgs, preds, {.weighting = Weighting::equal});
  EXPECT_EQ(f.mean, e.mean);
  EXPECT_EQ(f.sentiment, e.sentiment);
}

TEST(FirmSession, SentimentSources) {
  PredictionMap preds = {{"a", happy(0.1)}, {"b", happy(0.1)}, {"c", happy(0.1)}, {"d", happy(0.1)}};
  std::vector<SessionMessage> msgs = {
      {"a", 0, 1.0, 0.5, {}}, {"b", 0, 1.0, std::nullopt, {}}, {"c", 0, -1.0, -0.2, {}}, {"d", 0, 0.0, 0.1, {}}};
  auto tag = aggregate_firm_session(key(), msgs, preds, {.weighting = Weighting::equal});
  EXPECT_NEAR(tag.sentiment, (1.0 + 1.0 - 1.0 + 0.0) / 4.0, 1e-15);
  auto plat = aggregate_firm_session(key(), msgs, preds,
                                     {.weighting = Weighting::equal, .sentiment = SentimentSource::platform});
  EXPECT_NEAR(plat.sentiment, (0.5 + 1.0 - 0.2 + 0.1) / 4.0, 1e-15);  // b falls back to its tag
}

TEST(FirmSession, MissingPredictionsAreListed) {
  PredictionMap preds = {{"a", happy(0.4)}};
  try {
    aggregate_firm_session(key(), {{"zz"}, {"a"}, {"bb"}}, preds);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("bb, zz"), std::string::npos);
  }
}

TEST(FirmSession, ContentSplitsPartition) {
  PredictionMap preds;
  std::vector<SessionMessage> msgs;
  Rng rng(21);
  for (int i = 0; i < 30; ++i) {
    const std::string id = "s" + std::to_string(i);
    preds[id] = random_distribution(rng);
    ContentTag t{rng.below(2) ? ChatType::finance : ChatType::chat,
                 rng.below(3) ? InfoType::original : InfoType::disseminating};
    msgs.push_back({id, 0, 0, std::nullopt, t});
  }
  auto r = aggregate_firm_session(key(), msgs, preds, {.weighting = Weighting::equal});
  ASSERT_TRUE(r.splits);
  const auto& s = *r.splits;
  EXPECT_EQ(s[0].n + s[1].n, r.n);
  EXPECT_EQ(s[2].n + s[3].n, r.n);
  // Equal weights: overall valence is the count-weighted mix of either partition.
  EXPECT_NEAR((s[0].n * s[0].valence + s[1].n * s[1].valence) / r.n, r.valence, 1e-12);
  EXPECT_NEAR((s[2].n * s[2].valence + s[3].n * s[3].valence) / r.n, r.valence, 1e-12);
  msgs[0].content.reset();
  EXPECT_FALSE(aggregate_firm_session(key(), msgs, preds).splits);
}

TEST(Content, Rules) {
  FinanceDictionary dict({"earnings", "balance sheet", "10-k", "52 week"});
  EXPECT_EQ(tag_content(clean({"great", "earnings", "today"}), dict).chat_type, ChatType::finance);
  EXPECT_EQ(tag_content(clean({":)", ":)"}), dict).chat_type, ChatType::chat);
  EXPECT_EQ(tag_content(clean({"the", "balance", "sheet"}), dict).chat_type, ChatType::finance);
  EXPECT_EQ(tag_content(clean({"balance", "the", "sheet"}), dict).chat_type, ChatType::chat);
  EXPECT_EQ(tag_content(clean({"read", "the", "<number>", "k"}), dict).chat_type, ChatType::finance);
  EXPECT_EQ(tag_content(clean({"<number>", "week", "high"}), dict).chat_type, ChatType::finance);
  EXPECT_EQ(tag_content(clean({"earnings"}, true), dict).info_type, InfoType::disseminating);
  EXPECT_EQ(tag_content(clean({"earnings"}, false, true), dict).info_type, InfoType::disseminating);
  EXPECT_EQ(tag_content(clean({"earnings"}), dict).info_type, InfoType::original);
}

TEST(Content, ShippedDictionaryLoads) {
  auto dict = load_finance_dictionary(std::string(EMOPIPE_DATA_DIR) + "/finance_dictionary.txt");
  EXPECT_GT(dict.size(), 100u);
  EXPECT_TRUE(dict.matches({"earnings"}));
  EXPECT_FALSE(dict.matches({"lol", ":)"}));
  EXPECT_THROW(load_finance_dictionary("/nonexistent/dict.txt"), ValidationError);
}

TEST(BuildFirmSessions, GroupsFiltersAndAggregates) {
  std::vector<Date> days = {make_date(2021, 1, 4), make_date(2021, 1, 5), make_date(2021, 1, 6)};
  corpus::TradingCalendar cal(days);
  std::vector<corpus::RawMessage> msgs;
  PredictionMap preds;
  auto add = [&](const std::string& ticker, Date d, int minute) {
    corpus::RawMessage m;
    m.message_id = ticker + std::to_string(msgs.size());
    m.cashtags = {ticker};
    m.local = {d, minute};
    preds[m.message_id] = happy(0.1 * double(msgs.size() % 5));
    msgs.push_back(m);
  };
  for (int i = 0; i < 12; ++i) add("AMC", make_date(2021, 1, 4), 17 * 60 + i);  // after close -> 01-05 premarket
  for (int i = 0; i < 10; ++i) add("AMC", make_date(2021, 1, 5), 10 * 60 + i);  // 01-05 market
  for (int i = 0; i < 9; ++i) add("GME", make_date(2021, 1, 5), 8 * 60);        // below the floor
  add("GME", make_date(2021, 1, 9), 8 * 60);                                    // outside the calendar
  auto res = build_firm_sessions(msgs, preds, cal);
  ASSERT_EQ(res.records.size(), 2u);
  EXPECT_EQ(res.out_of_calendar, 1u);
  EXPECT_EQ(res.sessions_below_minimum, 1u);
  EXPECT_EQ(res.records[0].key, (SessionKey{"AMC", make_date(2021, 1, 5), corpus::Session::premarket}));
  EXPECT_EQ(res.records[0].n, 12u);
  EXPECT_EQ(res.records[1].key.session, corpus::Session::market);
  preds.erase(msgs[3].message_id);
  EXPECT_THROW(build_firm_sessions(msgs, preds, cal), ValidationError);
}

TEST(FirmSessionCsv, RoundTrip) {
  Rng rng(30);
  std::vector<FirmSessionRecord> recs;
  for (int i = 0; i < 5; ++i) {
    FirmSessionRecord r;
    r.key = {"T" + std::to_string(i), make_date(2021, 2, 1 + i), i % 2 ? corpus::Session::market : corpus::Session::premarket};
    r.n = 10 + i;
    r.mean = random_distribution(rng);
    r.valence = valence(r.mean);
    r.sentiment = rng.uniform(-1, 1);
    std::array<SplitAggregate, kNumSplits> s{};
    s[0] = {r.n, r.valence, r.sentiment};
    s[1] = {0, kMissing, kMissing};
    s[2] = {3, 0.25, -0.5};
    s[3] = {r.n - 3, -0.1, 0.0};
    r.splits = s;
    recs.push_back(r);
  }
  std::stringstream ss;
  RunMetadata meta;
  write_firm_sessions(ss, recs, &meta);
  EXPECT_EQ(ss.str().rfind("# emopipe version=", 0), 0u);
  auto back = read_firm_sessions(ss, "fs.csv");
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(back[i].key, recs[i].key);
    EXPECT_EQ(back[i].mean, recs[i].mean);
    EXPECT_EQ(back[i].valence, recs[i].valence);
    EXPECT_EQ(back[i].sentiment, recs[i].sentiment);
    ASSERT_TRUE(back[i].splits);
    EXPECT_EQ((*back[i].splits)[2].n, 3u);
    EXPECT_TRUE(std::isnan((*back[i].splits)[1].valence));
  }
}

TEST(FirmSessionCsv, HeaderAndErrors) {
  auto h = firm_session_header(false);
  EXPECT_EQ(str::join(h, ","), "ticker,date,session,n,neutral,happy,sad,anger,disgust,surprise,fear,valence,sentiment");
  std::stringstream bad(str::join(h, ",") + "\nAMC,2021-13-01,premarket,10,1,0,0,0,0,0,0,0,0\n");
  try {
    read_firm_sessions(bad, "bad.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(EventStudy, ConstantSeriesHasNoZ) {
  std::vector<std::pair<Date, double>> s;
  for (int i = 0; i < 120; ++i) s.emplace_back(add_days(make_date(2020, 1, 1), i), 0.1);
  auto pts = rolling_zscores(s, 90);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_FALSE(pts[i].z);
    EXPECT_EQ(pts[i].rolling_sd.has_value(), i >= 90);
    if (pts[i].rolling_sd) EXPECT_EQ(*pts[i].rolling_sd, 0.0);
  }
}

TEST(EventStudy, WindowLongerThanSeries) {
  std::vector<std::pair<Date, double>> s;
  for (int i = 0; i < 30; ++i) s.emplace_back(add_days(make_date(2020, 1, 1), i), 0.01 * i);
  for (const auto& p : rolling_zscores(s, 90)) {
    EXPECT_FALSE(p.rolling_mean);
    EXPECT_FALSE(p.z);
  }
}

TEST(EventStudy, MatchesBruteForceWindow) {
  Rng rng(33);
  std::vector<std::pair<Date, double>> s;
  for (int i = 0; i < 60; ++i) s.emplace_back(add_days(make_date(2020, 3, 1), i), rng.uniform(0.0, 0.2));
  const std::size_t w = 10;
  auto pts = rolling_zscores(s, w);
  for (std::size_t i = w; i < s.size(); ++i) {
    std::vector<double> win;
    for (std::size_t j = i - w; j < i; ++j) win.push_back(s[j].second);
    const double m = std::accumulate(win.begin(), win.end(), 0.0) / w;
    double v = 0.0;
    for (double x : win) v += (x - m) * (x - m);
    const double sd = std::sqrt(v / (w - 1));
    EXPECT_NEAR(*pts[i].rolling_mean, m, 1e-15);
    EXPECT_NEAR(*pts[i].rolling_sd, sd, 1e-15);
    EXPECT_NEAR(*pts[i].z, (s[i].second - m) / sd, 1e-12);
  }
}

TEST(EventStudy, SpikeCalibratedToTwoPointFour) {
  // Baseline alternating 4% +/- a; sample SD over 90 days = a * sqrt(90/89).
  const double target_sd = 0.0208;
  const double a = target_sd * std::sqrt(89.0 / 90.0);
  std::vector<std::pair<Date, double>> s;
  for (int i = 0; i < 90; ++i) s.emplace_back(add_days(make_date(2020, 9, 1), i), 0.04 + (i % 2 ? a : -a));
  s.emplace_back(add_days(make_date(2020, 9, 1), 90), 0.0901);
  auto pts = rolling_zscores(s, 90);
  EXPECT_NEAR(*pts.back().rolling_mean, 0.04, 1e-12);
  EXPECT_NEAR(*pts.back().rolling_sd, target_sd, 1e-12);
  EXPECT_NEAR(*pts.back().z, 2.4, 0.1);
}

TEST(EventStudy, SeriesFromRecordsAndCsv) {
  std::vector<FirmSessionRecord> recs;
  for (int i = 0; i < 5; ++i)
    for (auto sess : {corpus::Session::premarket, corpus::Session::market}) {
      FirmSessionRecord r;
      r.key = {"AMC", add_days(make_date(2021, 1, 4), 4 - i), sess};
      r.mean = dist({0.9 - 0.1 * i, 0, 0, 0.1 * i + 0.1 * (sess == corpus::Session::market), 0, 0, 0});
      recs.push_back(r);
    }
  auto series = emotion_time_series(recs, "AMC", Emotion::Anger, 2);
  ASSERT_EQ(series.points.size(), 5u);
  EXPECT_EQ(series.points.front().date, make_date(2021, 1, 4));
  EXPECT_NEAR(series.points.front().share, 0.4, 1e-15);
  std::stringstream ss;
  write_event_study(ss, {series});
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "ticker,emotion,date,share,rolling_mean,rolling_sd,z");
  std::string first;
  std::getline(ss, first);
  EXPECT_EQ(first, "AMC,anger,2021-01-04,0.4,,,");
  EXPECT_THROW(rolling_zscores({{make_date(2021, 1, 2), 0.1}, {make_date(2021, 1, 1), 0.1}}, 2), ValidationError);
}

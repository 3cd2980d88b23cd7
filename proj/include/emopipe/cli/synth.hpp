#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "emopipe/common/csv.hpp"
#include "emopipe/common/date.hpp"
#include "emopipe/common/metadata.hpp"
#include "emopipe/common/rng.hpp"
#include "emopipe/emoclass/emotion.hpp"
#include "json.hpp"

namespace emopipe::cli {

// Deterministic synthetic inputs for the full pipeline: messages, prices,
// security master, labeled examples and name lists.
struct SynthOptions {
  std::size_t messages = 500;
  std::size_t labeled_per_class = 100;
  std::uint64_t seed = 7;
};

namespace synth_detail {

struct Firm {
  const char* ticker;
  const char* company;
  const char* industry;
  const char* secstat;
  const char* tpci;
  int exchg;
};

// The last two fail the security master: one inactive, one absent.
inline constexpr std::array<Firm, 7> kFirms = {{
    {"ACME", "acmecorp", "tech", "A", "0", 11},
    {"BOLT", "boltworks", "tech", "A", "0", 14},
    {"CRUX", "cruxenergy", "energy", "A", "0", 12},
    {"DYNO", "dynopower", "energy", "A", "0", 11},
    {"EPIC", "epicstores", "retail", "A", "0", 14},
    {"FIZZ", "fizzdrinks", "retail", "I", "0", 11},
    {"GLOW", "glowlabs", "tech", "A", "0", 11},
}};
inline constexpr std::size_t kListed = 5;

inline const std::array<std::vector<std::string>, emoclass::kNumEmotions>& phrases() {
  static const std::array<std::vector<std::string>, emoclass::kNumEmotions> p = {{
      {"holding my shares for now", "earnings call is at 8am", "volume looks average today", "watching the chart",
       "dividend date is next week", "analyst meeting on thursday", "no position here yet", "price target unchanged"},
      {"love this stock", "great earnings, so happy", "this is going to the moon :)", "feeling great about this one",
       "awesome quarter, well done", "best day ever for holders", "so glad i bought more", "excellent guidance :D"},
      {"sad to see this drop", "feeling down about my position :(", "so disappointed in this quarter",
       "lost a lot today, not feeling it", "heartbroken by this chart", "miss the old highs", "unhappy with the results",
       "depressing price action"},
      {"this is ridiculous, management is terrible", "so angry at this company", "furious with the ceo",
       "hate this manipulation", "outraged by the dilution", "sick and tired of the lies", "what a joke of a board",
       "angry about the delay again"},
      {"disgusting behavior by the board", "gross accounting tricks", "this is sickening", "yuck what a mess",
       "revolting insider selling", "nasty report, vile spin", "disgusted by the buyback", "filthy short report"},
      {"wow did not expect that", "what a surprise", "unbelievable move today", "omg look at the volume",
       "shocked by the numbers", "no way this happened", "whoa what a gap up", "stunned by the news"},
      {"scared this will crash", "worried about the debt", "afraid of a margin call", "nervous ahead of earnings",
       "terrified of the open", "panic selling is coming", "fear the worst tomorrow", "anxious about the guidance"},
  }};
  return p;
}

inline std::string utc_stamp(const Date& d, int minute_of_day) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02d:%02d:00Z", format_date(d).c_str(), minute_of_day / 60, minute_of_day % 60);
  return buf;
}

// Emotion draw tilted toward `mood` (positive favours happy).
inline emoclass::Emotion draw_emotion(Rng& rng, double mood) {
  std::array<double, emoclass::kNumEmotions> w = {3.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  w[1] *= std::exp(mood);
  for (std::size_t k : {2, 3, 4, 6}) w[k] *= std::exp(-mood);
  double total = 0.0;
  for (double v : w) total += v;
  double u = rng.uniform() * total;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (u < w[k]) return static_cast<emoclass::Emotion>(k);
    u -= w[k];
  }
  return emoclass::Emotion::Neutral;
}

inline std::string body_for(Rng& rng, emoclass::Emotion e, const Firm& f) {
  const auto& list = phrases()[emoclass::index_of(e)];
  std::string body = "$" + std::string(f.ticker) + " " + list[rng.below(list.size())];
  switch (rng.below(8)) {
    case 0: body += " " + std::to_string(1 + rng.below(20)) + "% move"; break;
    case 1: body += " https://example.com/news/" + std::to_string(rng.below(1000)); break;
    case 2: body = "rt @traderjoe: " + body; break;
    case 3: body += ", i'm watching " + std::string(f.company); break;
    case 4: body += " can't wait for earnings"; break;
    default: break;
  }
  return body;
}

inline std::vector<Date> trading_days(Date from, Date to) {
  std::vector<Date> out;
  for (Date d = from; day_number(d) <= day_number(to); d = add_days(d, 1))
    if (iso_weekday(d) <= 5) out.push_back(d);
  return out;
}

}  // namespace synth_detail

inline void write_synthetic_fixtures(const std::filesystem::path& dir, const SynthOptions& opt,
                                     const RunMetadata& meta) {
  using namespace synth_detail;
  using emoclass::Emotion;
  std::filesystem::create_directories(dir);
  Rng rng(opt.seed);
  const auto days = trading_days(make_date(2020, 6, 1), make_date(2021, 2, 26));

  // Prices: geometric random walks with an overnight gap.
  {
    auto f = csv::open_output((dir / "prices.csv").string());
    meta.write_comment(f);
    csv::write_row(f, {"firm_id", "date", "industry", "open", "close", "shares"});
    for (std::size_t i = 0; i < kListed; ++i) {
      double close = 20.0 + 15.0 * static_cast<double>(i);
      const double shares = 1e7 * static_cast<double>(i + 1);
      for (const auto& d : days) {
        const double open = close * std::exp(rng.normal(0.0, 0.01));
        close = open * std::exp(rng.normal(0.0, 0.02));
        csv::write_row(f, {kFirms[i].ticker, format_date(d), kFirms[i].industry, str::fixed(open, 4),
                           str::fixed(close, 4), str::fixed(shares, 0)});
      }
    }
  }
  {
    auto f = csv::open_output((dir / "security_master.csv").string());
    meta.write_comment(f);
    csv::write_row(f, {"ticker", "secstat", "tpci", "exchg"});
    for (std::size_t i = 0; i + 1 < kFirms.size(); ++i)
      csv::write_row(f, {kFirms[i].ticker, kFirms[i].secstat, kFirms[i].tpci, std::to_string(kFirms[i].exchg)});
  }
  {
    std::ofstream t(dir / "tickers.txt"), c(dir / "companies.txt"), u(dir / "user_handles.txt");
    for (const auto& firm : kFirms) {
      t << str::to_lower(firm.ticker) << '\n';
      c << firm.company << '\n';
    }
    u << "traderjoe\nchartguy\nwallstbets\n";
  }

  // Messages: premarket sessions on seven trading days with at least four
  // further days of prices, plus the cases each restriction stage removes.
  const std::size_t last = days.size() - 6;
  std::vector<Date> event_days(days.begin() + static_cast<std::ptrdiff_t>(last - 7),
                               days.begin() + static_cast<std::ptrdiff_t>(last));
  std::vector<nlohmann::ordered_json> msgs;
  auto add = [&](const Firm& f, std::vector<std::string> tags, const std::string& user, const std::string& ts,
                 const std::string& body, Emotion e) {
    nlohmann::ordered_json j;
    j["message_id"] = "m" + std::to_string(100000 + msgs.size());
    j["user_id"] = user;
    j["timestamp"] = ts;
    j["body"] = body;
    j["cashtags"] = tags.empty() ? std::vector<std::string>{f.ticker} : tags;
    j["self_tag"] = e == Emotion::Happy ? (rng.uniform() < 0.6 ? "bullish" : "")
                    : (e == Emotion::Sad || e == Emotion::Fear) ? (rng.uniform() < 0.6 ? "bearish" : "")
                                                                 : "";
    j["follower_count"] = static_cast<std::uint64_t>(std::exp(rng.normal(4.0, 1.5)));
    j["likes"] = rng.below(30);
    if (rng.uniform() < 0.3) j["sentiment_score"] = std::round(rng.uniform(-1.0, 1.0) * 100.0) / 100.0;
    msgs.push_back(std::move(j));
  };
  auto user = [&] { return "u" + std::to_string(rng.below(60)); };
  auto premarket = [&](const Date& d) { return utc_stamp(d, 12 * 60 + static_cast<int>(rng.below(149))); };

  const std::size_t noise = 20 + 8 + 22 + 30 + 6;
  const std::size_t main = opt.messages > noise ? opt.messages - noise : 0;
  std::vector<double> mood(kListed * event_days.size());
  for (auto& m : mood) m = rng.normal(0.0, 0.8);
  for (std::size_t k = 0; k < main; ++k) {
    const std::size_t s = k % mood.size();
    const auto& f = kFirms[s % kListed];
    const auto e = draw_emotion(rng, mood[s]);
    add(f, {}, user(), premarket(event_days[s / kListed]), body_for(rng, e, f), e);
  }
  for (std::size_t k = 0; k < 20; ++k) {  // several tickers
    const auto& f = kFirms[k % kListed];
    const auto e = draw_emotion(rng, 0.0);
    add(f, {f.ticker, kFirms[(k + 1) % kListed].ticker}, user(), premarket(event_days[k % event_days.size()]),
        body_for(rng, e, f) + " $" + kFirms[(k + 1) % kListed].ticker, e);
  }
  for (std::size_t k = 0; k < 8; ++k)  // automated repeats
    add(kFirms[0], {}, "u_bot", premarket(event_days[k % event_days.size()]), "$ACME daily scanner alert: volume spike",
        Emotion::Neutral);
  for (std::size_t k = 0; k < 22; ++k) {  // inactive and unlisted tickers
    const auto& f = kFirms[k < 15 ? 5 : 6];
    const auto e = draw_emotion(rng, 0.0);
    add(f, {}, user(), premarket(event_days[k % event_days.size()]), body_for(rng, e, f), e);
  }
  for (std::size_t k = 0; k < 30; ++k) {  // thin market-hours sessions
    const auto& f = kFirms[k % kListed];
    const auto e = draw_emotion(rng, 0.0);
    add(f, {}, user(), utc_stamp(event_days[k % event_days.size()], 15 * 60 + static_cast<int>(rng.below(300))),
        body_for(rng, e, f), e);
  }
  for (std::size_t k = 0; k < 6; ++k) {  // one thin premarket session
    const auto e = draw_emotion(rng, 0.0);
    add(kFirms[4], {}, user(), premarket(days[last - 9]), body_for(rng, e, kFirms[4]), e);
  }
  {
    auto f = csv::open_output((dir / "messages.jsonl").string());
    meta.write_json_line(f);
    for (const auto& j : msgs) f << j.dump() << '\n';
  }

  // Labeled examples: one phrase, sometimes two from the same class, with fillers.
  {
    static const std::vector<std::string> fillers = {"", "", "honestly", "today", "lol", "right now", "again", "tbh"};
    std::vector<std::array<std::string, 3>> rows;
    for (std::size_t k = 0; k < emoclass::kNumEmotions; ++k)
      for (std::size_t i = 0; i < opt.labeled_per_class; ++i) {
        const auto& list = phrases()[k];
        std::string text = list[rng.below(list.size())];
        if (rng.uniform() < 0.4) text += " " + list[rng.below(list.size())];
        const auto& fill = fillers[rng.below(fillers.size())];
        if (!fill.empty()) text = rng.uniform() < 0.5 ? fill + " " + text : text + " " + fill;
        rows.push_back({text, std::string(emoclass::kEmotionNames[k]), rng.uniform() < 0.8 ? "human" : "llm"});
      }
    rng.shuffle(rows);
    auto f = csv::open_output((dir / "labeled.csv").string());
    meta.write_comment(f);
    csv::write_row(f, {"text", "label", "annotator"});
    for (const auto& r : rows) csv::write_row(f, {r[0], r[1], r[2]});
  }
}

}  // namespace emopipe::cli

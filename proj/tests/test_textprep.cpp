#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "emopipe/common/rng.hpp"
#include "emopipe/textprep/normalize.hpp"

using namespace emopipe;
using namespace emopipe::textprep;

namespace {

using Tokens = std::vector<std::string>;

const Resources& shipped() {
  static const Resources r = [] {
    Resources res{load_frequency_dictionary(std::string(EMOPIPE_DATA_DIR) + "/frequency_dictionary_en.tsv"),
                  load_lexicon(std::string(EMOPIPE_DATA_DIR) + "/emo_lexicon.txt"),
                  load_contractions(std::string(EMOPIPE_DATA_DIR) + "/contractions.tsv"),
                  {}};
    res.names.tickers = {"amzn", "tsla", "aapl"};
    res.names.companies = {"amazon", "tesla"};
    res.names.user_handles = {"jdoe"};
    return res;
  }();
  return r;
}

EmoLexicon small_lexicon() {
  EmoLexicon lex;
  for (const char* e : {":)", ":))", ":(", "<3", "xd", ":d", "\xF0\x9F\x9A\x80"}) lex.add(e);
  return lex;
}

// Plain full-matrix optimal string alignment distance.
int reference_osa(const std::string& a, const std::string& b) {
  std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
    }
  return d[a.size()][b.size()];
}

}  // namespace

TEST(StripArtifacts, Examples) {
  auto r = strip_artifacts("buy now http://x.co/a");
  EXPECT_EQ(r.text, "buy now");
  EXPECT_TRUE(r.has_hyperlink);
  r = strip_artifacts("hello");
  EXPECT_EQ(r.text, "hello");
  EXPECT_FALSE(r.has_hyperlink);
  r = strip_artifacts("see chart http://a.b http://c.d done");
  EXPECT_EQ(r.text, "see chart done");
  EXPECT_TRUE(r.has_hyperlink);
}

TEST(StripArtifacts, TagsAndImages) {
  EXPECT_EQ(strip_artifacts("@jdoe great call #EURUSD").text, "great call");
  EXPECT_EQ(strip_artifacts("look ![chart](img.png) here").text, "look here");
  EXPECT_EQ(strip_artifacts("pic <img src=\"a.png\"> ok").text, "pic ok");
  EXPECT_FALSE(strip_artifacts("look ![chart](img.png) here").has_hyperlink);
  // '@' without a name and emails keep their text.
  EXPECT_EQ(strip_artifacts("trading @ $1.45").text, "trading @ $1.45");
  EXPECT_EQ(strip_artifacts("keep <ticker> and <number>").text, "keep <ticker> and <number>");
}

TEST(Contractions, Examples) {
  const auto& table = shipped().contractions;
  EXPECT_GE(table.size(), 100u);
  EXPECT_EQ(table.expand("i've"), "i have");
  EXPECT_EQ(table.expand("moon"), "moon");
  EXPECT_EQ(table.expand("don't can't"), "do not cannot");
  EXPECT_EQ(table.expand("i\xE2\x80\x99m in"), "i am in");
  EXPECT_EQ(table.expand("'i've' seen"), "'i have' seen");
}

// Every entry of the shipped table expands to itself through the lookup.
TEST(Contractions, TableLookupOracle) {
  const auto& table = shipped().contractions;
  for (const char* w : {"won't", "shouldn't've", "y'all", "it's", "let's"}) {
    const std::string* exp = table.find(w);
    ASSERT_NE(exp, nullptr) << w;
    EXPECT_EQ(table.expand(std::string("so ") + w + " ok"), "so " + *exp + " ok");
  }
}

TEST(Lex, Examples) {
  auto lex_small = small_lexicon();
  EXPECT_EQ(lex("nice:)", lex_small), (Tokens{"nice", ":)"}));
  EXPECT_EQ(lex("not feeling it :)", lex_small), (Tokens{"not", "feeling", "it", ":)"}));
  EXPECT_EQ(lex(":))", lex_small), (Tokens{":))"}));
}

TEST(Lex, LongestMatchTwoEntryOracle) {
  // For every pair of entries (a, a+suffix) the lexer emits the longer one when
  // both are present and the shorter one plus leftovers otherwise.
  const std::vector<std::pair<std::string, std::string>> pairs = {{":)", ":))"}, {":(", ":(("}, {":-(", ":-(("}, {":-", ":-)"}};
  for (const auto& [shorter, longer] : pairs) {
    EmoLexicon both, only_short;
    both.add(shorter);
    both.add(longer);
    only_short.add(shorter);
    EXPECT_EQ(lex(longer, both), Tokens{longer});
    auto t = lex(longer, only_short);
    ASSERT_FALSE(t.empty());
    EXPECT_EQ(t[0], shorter);
  }
}

TEST(Lex, WordsNumbersCashtagsEmoji) {
  auto l = small_lexicon();
  EXPECT_EQ(lex("$amzn up 3.5% to $1,000.25 today", l), (Tokens{"$amzn", "up", "3.5%", "to", "$1,000.25", "today"}));
  EXPECT_EQ(lex("moon\xF0\x9F\x9A\x80\xF0\x9F\x9A\x80", l),
            (Tokens{"moon", "\xF0\x9F\x9A\x80", "\xF0\x9F\x9A\x80"}));
  EXPECT_EQ(lex("xd lol", l), (Tokens{"xd", "lol"}));
  EXPECT_EQ(lex("boxd", l), (Tokens{"boxd"}));  // alphanumeric entry needs a left boundary
  EXPECT_EQ(lex(":done", l), (Tokens{"done"}));  // ...and a right boundary
  EXPECT_EQ(lex("<ticker> <3", l), (Tokens{"<ticker>", "<3"}));
  EXPECT_EQ(lex("uh-oh, what?!", l), (Tokens{"uh", "oh", "what"}));
}

TEST(Lex, EmoTokensSurvive) {
  const auto& r = shipped();
  Rng rng(3);
  std::vector<std::string> emos = {":)", ":(", ";)", "<3", ":'(", "^_^", "\xF0\x9F\x9A\x80", "\xF0\x9F\x98\x82"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    std::vector<std::string> planted;
    for (int k = 0; k < 4; ++k) {
      const auto& e = emos[rng.below(emos.size())];
      text += (rng.below(2) ? " stock " : " ") + e;
      planted.push_back(e);
    }
    auto out = normalize(text, r);
    std::vector<std::string> emo_out;
    for (const auto& t : out.tokens)
      if (r.lexicon.contains(t)) emo_out.push_back(t);
    EXPECT_EQ(emo_out, planted) << text;
  }
}

TEST(FrequencyDictionary, BuildCounts) {
  EmoLexicon lexicon = small_lexicon();
  auto dict = build_frequency_dictionary({{"hold", "hold", "buy"}}, {}, {}, lexicon);
  EXPECT_EQ(dict.size(), 2u);
  EXPECT_EQ(dict.count("hold"), 2u);
  EXPECT_EQ(dict.count("buy"), 1u);

  auto d2 = build_frequency_dictionary({{"$tsla", "tsla", "moon", ":)", "the"}}, {"tsla"}, {"the"}, lexicon);
  EXPECT_FALSE(d2.contains("tsla"));
  EXPECT_FALSE(d2.contains("$tsla"));
  EXPECT_FALSE(d2.contains("the"));
  EXPECT_TRUE(d2.contains("moon"));
  EXPECT_THROW(build_frequency_dictionary({{"the"}}, {}, {"the"}, lexicon), ValidationError);
  EXPECT_THROW(build_frequency_dictionary({}, {}, {}, lexicon), ValidationError);
}

TEST(FrequencyDictionary, DeletionIndexOfLike) {
  FrequencyDictionary dict(1);
  dict.add("like", 5);
  dict.build_index();
  // Brute-force single deletions of "like".
  std::set<std::string> expected;
  const std::string w = "like";
  for (std::size_t i = 0; i < w.size(); ++i) expected.insert(w.substr(0, i) + w.substr(i + 1));
  EXPECT_EQ(expected, (std::set<std::string>{"ike", "lke", "lie", "lik"}));
  for (const auto& v : expected) EXPECT_TRUE(dict.index_contains_variant(v)) << v;
  EXPECT_TRUE(dict.index_contains_variant("like"));
  EXPECT_FALSE(dict.index_contains_variant("ke"));  // two deletions exceed distance 1
  EXPECT_TRUE(dict.index_consistent());
}

TEST(CorrectSpelling, Examples) {
  FrequencyDictionary dict;
  dict.add("hold", 100);
  dict.build_index();
  EXPECT_EQ(correct_spelling("hold", dict), "hold");
  EXPECT_EQ(correct_spelling("hodl", dict), "hold");
  EXPECT_EQ(correct_spelling("zzqx", dict), "zzqx");
}

TEST(CorrectSpelling, TieRules) {
  FrequencyDictionary dict;
  dict.add("cat", 10);
  dict.add("cut", 10);
  dict.add("coat", 10);
  dict.add("cast", 50);
  dict.build_index();
  // "cst": cast is distance 1 with the highest count.
  EXPECT_EQ(correct_spelling("cst", dict), "cast");
  // "czt": cat and cut tie on count and distance; lexicographic picks cat.
  EXPECT_EQ(correct_spelling("czt", dict), "cast");  // cast (d=2) has the highest count
  FrequencyDictionary even;
  even.add("cat", 10);
  even.add("cut", 10);
  even.add("coat", 10);
  even.build_index();
  EXPECT_EQ(correct_spelling("czt", even), "cat");
  EXPECT_EQ(correct_spelling("caat", even), "cat");  // coat d=1 vs cat d=1: lexicographic
}

// Property: the result never lies beyond max_edit_distance and always matches
// a brute-force scan over the whole dictionary.
TEST(CorrectSpelling, BruteForceProperty) {
  FrequencyDictionary dict;
  Rng rng(11);
  const std::string alphabet = "abcde";
  std::vector<std::string> words;
  for (int i = 0; i < 300; ++i) {
    std::string w;
    const auto len = 2 + rng.below(5);
    for (std::size_t k = 0; k < len; ++k) w.push_back(alphabet[rng.below(alphabet.size())]);
    dict.add(w, 1 + rng.below(20));
  }
  dict.build_index();
  for (int q = 0; q < 400; ++q) {
    std::string t;
    const auto len = 1 + rng.below(7);
    for (std::size_t k = 0; k < len; ++k) t.push_back(alphabet[rng.below(alphabet.size())]);
    std::string expected = t;
    if (!dict.contains(t)) {
      std::uint64_t best_c = 0;
      int best_d = 99;
      bool found = false;
      for (const auto& w : dict.words()) {
        int d = reference_osa(t, w);
        if (d > 2) continue;
        auto c = dict.count(w);
        if (!found || c > best_c || (c == best_c && (d < best_d || (d == best_d && w < expected)))) {
          expected = w;
          best_c = c;
          best_d = d;
          found = true;
        }
      }
    }
    auto got = correct_spelling(t, dict);
    EXPECT_EQ(got, expected) << t;
    EXPECT_LE(reference_osa(t, got), 2);
  }
}

TEST(SegmentWord, Examples) {
  const auto& dict = shipped().dictionary;
  EXPECT_EQ(segment_word("ilike", dict), (Tokens{"i", "like"}));
  EXPECT_EQ(segment_word("like", dict), (Tokens{"like"}));
  EXPECT_EQ(segment_word("abcq", dict).size(), 1u);
  FrequencyDictionary small;
  small.add("i", 10);
  small.add("like", 5);
  small.build_index();
  EXPECT_EQ(segment_word("abcq", small), (Tokens{"abcq"}));
  EXPECT_EQ(segment_word("ilikei", small), (Tokens{"i", "like", "i"}));
}

TEST(SegmentWord, SegmentsReconcatenate) {
  const auto& dict = shipped().dictionary;
  for (const char* w : {"buythedip", "tothemoon", "stockmarket", "holdforever", "qqqzzz"}) {
    auto parts = segment_word(w, dict);
    EXPECT_EQ(str::join(parts, ""), w);
    if (parts.size() > 1)
      for (const auto& p : parts) EXPECT_TRUE(dict.contains(p)) << p;
  }
}

TEST(Placeholders, Rules) {
  const auto& r = shipped();
  auto out = substitute_placeholders({"$amzn", "125", "1,000", "3.5", "qqxzw", "amazon", "jdoe", "tsla", "buy", ":)"},
                                     r.names, r.dictionary, r.lexicon);
  EXPECT_EQ(out, (Tokens{"<ticker>", "<number>", "<number>", "<number>", "<unknown>", "<company>", "<user>",
                         "<ticker>", "buy", ":)"}));
}

TEST(Normalize, Goldens) {
  const auto& r = shipped();
  EXPECT_EQ(normalize("I've $AMZN :)", r).tokens, (Tokens{"i", "have", "<ticker>", ":)"}));
  EXPECT_EQ(normalize("i've", r).normalized_text, "i have");
  EXPECT_EQ(normalize("ilike", r).normalized_text, "i like");
  EXPECT_EQ(normalize("$amzn", r).normalized_text, "<ticker>");
  EXPECT_EQ(normalize("125", r).normalized_text, "<number>");
  EXPECT_EQ(normalize("not feeling it :)", r).tokens, (Tokens{"not", "feeling", "it", ":)"}));
  auto empty = normalize("", r);
  EXPECT_TRUE(empty.tokens.empty());
  EXPECT_EQ(empty.normalized_text, "");
}

TEST(Normalize, FlagsAndCorrection) {
  const auto& r = shipped();
  auto m = normalize("RT @jdoe: $TSLA earnings beat http://t.co/x", r, "m1");
  EXPECT_TRUE(m.is_retweet);
  EXPECT_TRUE(m.has_hyperlink);
  EXPECT_EQ(m.message_id, "m1");
  EXPECT_EQ(m.tokens, (Tokens{"<ticker>", "earnings", "beat"}));
  EXPECT_EQ(normalize("the stcok is up", r).normalized_text, "the stock is up");
}

TEST(Normalize, IdempotentAndClosed) {
  const auto& r = shipped();
  const std::vector<std::string> samples = {
      "I've $AMZN :)",
      "$EURUSD #EURUSD screencast here: http://stks.co/c0sjB Take a FREE trial of all our #FX reports",
      "$ZN WOW! Wow, & wow!!!! after hours trading, down .62 trading @ $1.45 yaaaa baby!!!!!",
      "$CSCO March 27th 46$ calls are causing me much pain",
      "ilike tesla \xF0\x9F\x9A\x80\xF0\x9F\x9A\x80 to the moooon",
      "RT @someone: can't believe $AAPL dropped 5% :( :(",
      "UH-OOOOOOOOOO. TURDS always sink BLUB BLUB",
  };
  for (const auto& s : samples) {
    auto once = normalize(s, r);
    auto twice = normalize(once.normalized_text, r);
    EXPECT_EQ(twice.tokens, once.tokens) << s;
    EXPECT_EQ(once.normalized_text, str::join(once.tokens, " "));
    for (const auto& t : once.tokens) {
      EXPECT_TRUE(r.dictionary.contains(t) || r.lexicon.contains(t) || is_placeholder(t)) << t;
      if (!is_placeholder(t))
        for (char c : t) EXPECT_FALSE(str::is_upper(c)) << t;
    }
  }
}

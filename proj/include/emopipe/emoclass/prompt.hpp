#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"

namespace emopipe::emoclass {

// Chat-completion request for labeling one post with an LLM. Nothing here
// calls an API; the request is written out for external tooling.
struct AnnotationPrompt {
  std::string model = "gpt-3.5-turbo";
  double temperature = 0.0;
  std::string system;
  std::string user;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["model"] = model;
    j["temperature"] = temperature;
    j["messages"] = nlohmann::ordered_json::array(
        {{{"role", "system"}, {"content", system}}, {{"role", "user"}, {"content", user}}});
    return j;
  }

  void write_text(std::ostream& out) const {
    out << "# model: " << model << '\n' << "# temperature: " << (temperature == 0.0 ? "0" : std::to_string(temperature))
        << '\n'
        << "[system]\n"
        << system << '\n'
        << "[user]\n"
        << user << '\n';
  }
};

// The few-shot system message, exactly as sent (including its leading newline
// and trailing indentation).
inline const std::string& annotation_system_prompt() {
  static const std::string kPrompt =
      "\n"
      "You are a helpful assistant capable of analyzing and classifying emotions in social media posts, \n"
      "typically from a trading or financial context, into the following categories: neutral, happy, sad, anger, "
      "disgust, fear, and surprise. \n"
      "Note that these categories correspond to Ekman's six emotions and a neutral class. You only have these "
      "categories to choose from.\n"
      "\n"
      "Here are some examples:\n"
      "Post: $EURUSD #EURUSD screencast here: http://stks.co/c0sjB Take a FREE trial of all our #FX reports, email "
      "Sales@MarketChartist.com #Forex\n neutral\n\n"
      "Post: $DRYS will they release ER pre market or after hour ?\n neutral\n\n"
      "Post: $PTX so close to a breakout!!!\n happy\n\n"
      "Post: $SPY...Could see a strong reversal RIGHT HERE...BE READY WARRIORS!!!!\n happy\n\n"
      "Post: $HTZ no bueno anymore\n sad\n\n"
      "Post: $CSCO March 27th 46$ calls are causing me much pain\n sad\n\n"
      "Post: $ENSV *** you OPEC you greasy ***.\n anger\n\n"
      "Post: $IZEA what a piece of actual ***. Ted can choke on one\n anger\n\n"
      "Post: $NAK UH-OOOOOOOOOO. TURDS always sink BLUB BLUB\n disgust\n\n"
      "Post: $HTBX get a load of this scammer *** and BLOCKED\n disgust\n\n"
      "Post: $ZN WOW! Wow, & wow!!!! after hours trading, down .62 trading @ $1.45 yaaaa baby!!!!!\n surprise\n\n"
      "Post: $PLUG wow, now just heartless\n surprise\n\n"
      "Post: $JNUG maybe sell at the high today?\n fear\n\n"
      "Post: $WTW run traders the market is going down. Fed rates tomorrow\n fear\n\n"
      "    ";
  return kPrompt;
}

inline constexpr std::size_t kFewShotExamples = 14;

inline AnnotationPrompt build_annotation_prompt(std::string_view message_text) {
  AnnotationPrompt p;
  p.system = annotation_system_prompt();
  p.user = "Here's a social media post: '" + std::string(message_text) +
           "'. With one word, how would you label this post in terms of emotions?";
  return p;
}

}  // namespace emopipe::emoclass

#pragma once

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/common/metadata.hpp"
#include "emopipe/common/strings.hpp"
#include "emopipe/emoclass/emotion.hpp"
#include "json.hpp"

namespace emopipe::emoclass {

// One line of the prediction interchange file:
//   {"message_id": str, "probs": [7 floats, neutral..fear], "source": str}
struct PredictionRecord {
  std::string message_id;
  EmotionDistribution probs;
  std::string source;

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

inline nlohmann::ordered_json to_json(const PredictionRecord& r) {
  nlohmann::ordered_json j;
  j["message_id"] = r.message_id;
  j["probs"] = r.probs.p;
  j["source"] = r.source;
  return j;
}

inline void write_predictions(std::ostream& out, const std::vector<PredictionRecord>& records,
                              const RunMetadata* meta = nullptr) {
  if (meta) meta->write_json_line(out);
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

inline PredictionRecord parse_prediction_line(const std::string& line, const std::string& source, std::size_t line_no) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const std::exception& e) {
    throw ParseError(source, line_no, std::string("invalid JSON: ") + e.what());
  }
  PredictionRecord r;
  try {
    r.message_id = j.at("message_id").get<std::string>();
    const auto& probs = j.at("probs");
    if (!probs.is_array() || probs.size() != kNumEmotions)
      throw ParseError(source, line_no, "probs must be an array of 7 numbers");
    for (std::size_t i = 0; i < kNumEmotions; ++i) r.probs.p[i] = probs[i].get<double>();
    r.source = j.value("source", std::string{});
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(source, line_no, e.what());
  }
  if (auto why = r.probs.violation()) throw ParseError(source, line_no, "message '" + r.message_id + "': " + *why);
  return r;
}

// Rejects any row off the simplex by more than 1e-6, naming its line.
inline std::vector<PredictionRecord> read_predictions(std::istream& in, const std::string& source) {
  std::vector<PredictionRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (str::trim(line).empty() || line[0] == '#') continue;
    if (line.find("\"_meta\"") != std::string::npos) {
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_object() && j.contains("_meta")) continue;
    }
    out.push_back(parse_prediction_line(line, source, line_no));
  }
  return out;
}

inline std::vector<PredictionRecord> load_predictions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open predictions '" + path + "'");
  return read_predictions(in, path);
}

}  // namespace emopipe::emoclass

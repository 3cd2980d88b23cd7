#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "emopipe/common/csv.hpp"
#include "emopipe/common/error.hpp"
#include "emopipe/emoclass/emotion.hpp"

namespace emopipe::emoclass {

enum class Annotator { Human, Llm };

inline std::string_view annotator_name(Annotator a) { return a == Annotator::Human ? "human" : "llm"; }

struct LabeledExample {
  std::string text;
  Emotion label = Emotion::Neutral;
  Annotator annotator = Annotator::Human;
};

// CSV with header text,label,annotator; annotator may be omitted (human).
inline std::vector<LabeledExample> read_labeled(std::istream& in, const std::string& source) {
  csv::Reader reader(in, source);
  if (!reader.read_header()) throw ValidationError(source + ": empty labeled file");
  const auto text_col = reader.require_column("text");
  const auto label_col = reader.require_column("label");
  const auto annot_col = reader.column("annotator");
  std::vector<LabeledExample> out;
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() <= std::max(text_col, label_col)) throw ParseError(source, reader.line(), "too few columns");
    LabeledExample ex;
    ex.text = row[text_col];
    auto label = parse_emotion(str::to_lower(str::trim(row[label_col])));
    if (!label) throw ParseError(source, reader.line(), "unknown label '" + row[label_col] + "'");
    ex.label = *label;
    if (annot_col && *annot_col < row.size()) {
      auto a = str::to_lower(str::trim(row[*annot_col]));
      if (a == "llm") ex.annotator = Annotator::Llm;
      else if (a.empty() || a == "human") ex.annotator = Annotator::Human;
      else throw ParseError(source, reader.line(), "unknown annotator '" + a + "'");
    }
    out.push_back(std::move(ex));
  }
  return out;
}

inline std::vector<LabeledExample> load_labeled(const std::string& path) {
  auto in = csv::open_input(path);
  return read_labeled(in, path);
}

inline void write_labeled(std::ostream& out, const std::vector<LabeledExample>& rows) {
  csv::write_row(out, {"text", "label", "annotator"});
  for (const auto& r : rows)
    csv::write_row(out, {r.text, std::string(emotion_name(r.label)), std::string(annotator_name(r.annotator))});
}

}  // namespace emopipe::emoclass

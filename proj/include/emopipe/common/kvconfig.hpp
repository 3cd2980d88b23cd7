#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/common/metadata.hpp"
#include "emopipe/common/strings.hpp"

namespace emopipe::kv {

// Format:
//   # comment
//   [section name]
//   key = value
// Keys before the first header belong to the unnamed section "".
struct Entry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

struct Section {
  std::string name;
  std::size_t line = 0;
  std::vector<Entry> entries;

  const Entry* find(std::string_view key) const {
    for (const auto& e : entries)
      if (e.key == key) return &e;
    return nullptr;
  }
  std::optional<std::string> get(std::string_view key) const {
    if (auto* e = find(key)) return e->value;
    return std::nullopt;
  }
};

struct File {
  std::string source;
  std::vector<Section> sections;
  std::string text;  // normalized content, for hashing

  const Section* section(std::string_view name) const {
    for (const auto& s : sections)
      if (s.name == name) return &s;
    return nullptr;
  }
  std::string hash() const { return hex64(fnv1a64(text)); }
};

inline File parse(std::istream& in, const std::string& source) {
  File f;
  f.source = source;
  f.sections.push_back({"", 0, {}});
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = str::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(source, line_no, "unterminated section header");
      std::string name(str::trim(line.substr(1, line.size() - 2)));
      if (name.empty()) throw ParseError(source, line_no, "empty section name");
      for (const auto& s : f.sections)
        if (s.name == name) throw ParseError(source, line_no, "duplicate section [" + name + "]");
      f.sections.push_back({name, line_no, {}});
      f.text += "[" + name + "]\n";
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected key = value");
    Entry e{std::string(str::trim(line.substr(0, eq))), std::string(str::trim(line.substr(eq + 1))), line_no};
    if (e.key.empty()) throw ParseError(source, line_no, "empty key");
    auto& sec = f.sections.back();
    if (sec.find(e.key)) throw ParseError(source, line_no, "duplicate key '" + e.key + "'");
    f.text += e.key + "=" + e.value + "\n";
    sec.entries.push_back(std::move(e));
  }
  return f;
}

inline File parse_string(const std::string& text, const std::string& source = "<string>") {
  std::istringstream in(text);
  return parse(in, source);
}

inline File load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  return parse(in, path);
}

// Comma-separated list, entries trimmed, empties dropped.
inline std::vector<std::string> list(std::string_view value) {
  std::vector<std::string> out;
  for (auto& part : str::split(value, ','))
    if (auto t = str::trim(part); !t.empty()) out.emplace_back(t);
  return out;
}

}  // namespace emopipe::kv

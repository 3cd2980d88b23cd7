#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "emopipe/common/error.hpp"

namespace emopipe::csv {

// RFC 4180 style record reader. Lines starting with '#' before the header are
// metadata and skipped. Quoted fields may contain commas, quotes ("") and newlines.
class Reader {
 public:
  Reader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  // Reads the header row; returns false on empty input.
  bool read_header() {
    std::vector<std::string> row;
    while (next_raw(row)) {
      if (!row.empty() && !row[0].empty() && row[0][0] == '#') continue;
      if (row.size() == 1 && row[0].empty()) continue;
      header_ = row;
      for (std::size_t i = 0; i < header_.size(); ++i) index_[header_[i]] = i;
      return true;
    }
    return false;
  }

  bool next(std::vector<std::string>& row) {
    while (next_raw(row)) {
      if (row.size() == 1 && row[0].empty()) continue;
      return true;
    }
    return false;
  }

  const std::vector<std::string>& header() const { return header_; }
  std::optional<std::size_t> column(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t require_column(const std::string& name) const {
    auto c = column(name);
    if (!c) throw ValidationError(source_ + ": missing column '" + name + "'");
    return *c;
  }
  // Line on which the last returned record started.
  std::size_t line() const { return record_line_; }
  const std::string& source() const { return source_; }

 private:
  bool next_raw(std::vector<std::string>& row) {
    row.clear();
    int c = in_.get();
    if (c == EOF) return false;
    record_line_ = ++line_;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (;; c = in_.get()) {
      if (c == EOF) {
        if (quoted) throw ParseError(source_, record_line_, "unterminated quoted field");
        row.push_back(std::move(field));
        return true;
      }
      char ch = static_cast<char>(c);
      if (quoted) {
        if (ch == '"') {
          if (in_.peek() == '"') {
            field.push_back('"');
            in_.get();
          } else {
            quoted = false;
          }
        } else {
          if (ch == '\n') ++line_;
          field.push_back(ch);
        }
        continue;
      }
      if (ch == '"' && field.empty() && !was_quoted) {
        quoted = was_quoted = true;
      } else if (ch == ',') {
        row.push_back(std::move(field));
        field.clear();
        was_quoted = false;
      } else if (ch == '\n') {
        row.push_back(std::move(field));
        return true;
      } else if (ch != '\r') {
        field.push_back(ch);
      }
    }
  }

  std::istream& in_;
  std::string source_;
  std::vector<std::string> header_;
  std::map<std::string, std::size_t> index_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

inline std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline void write_row(std::ostream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << quote(row[i]);
  }
  out << '\n';
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace emopipe::csv

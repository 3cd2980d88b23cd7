#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "emopipe/common/csv.hpp"
#include "emopipe/common/date.hpp"
#include "emopipe/common/error.hpp"
#include "emopipe/common/metadata.hpp"
#include "emopipe/common/strings.hpp"

namespace emopipe::econo {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

// Firm-date panel stored by column. Key columns are firm_id, date and
// industry; every other column is numeric with NaN as missing.
class Panel {
 public:
  std::vector<std::string> firm;
  std::vector<Date> date;
  std::vector<std::string> industry;

  std::size_t rows() const { return firm.size(); }

  bool has(std::string_view name) const { return index_.count(std::string(name)) > 0; }

  const std::vector<std::string>& column_names() const { return names_; }

  const std::vector<double>& column(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw ValidationError("panel has no column '" + std::string(name) + "'");
    return data_[it->second];
  }
  std::vector<double>& column(std::string_view name) {
    return const_cast<std::vector<double>&>(static_cast<const Panel&>(*this).column(name));
  }

  // Adds or replaces a column; its length must match the key columns.
  void set_column(const std::string& name, std::vector<double> values) {
    if (values.size() != rows()) throw ValidationError("column '" + name + "' has the wrong length");
    if (auto it = index_.find(name); it != index_.end()) {
      data_[it->second] = std::move(values);
      return;
    }
    index_[name] = data_.size();
    names_.push_back(name);
    data_.push_back(std::move(values));
  }

  void add_row(std::string f, Date d, std::string ind) {
    firm.push_back(std::move(f));
    date.push_back(d);
    industry.push_back(std::move(ind));
    for (auto& c : data_) c.push_back(kNaN);
  }

  // Sorts rows by (firm, date); duplicate keys are rejected.
  void sort() {
    std::vector<std::size_t> order(rows());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return firm[a] != firm[b] ? firm[a] < firm[b] : date[a] < date[b];
    });
    for (std::size_t i = 1; i < order.size(); ++i)
      if (firm[order[i]] == firm[order[i - 1]] && date[order[i]] == date[order[i - 1]])
        throw ValidationError("duplicate panel row " + firm[order[i]] + " " + format_date(date[order[i]]));
    auto permute = [&](auto& v) {
      std::remove_reference_t<decltype(v)> out;
      out.reserve(v.size());
      for (auto i : order) out.push_back(v[i]);
      v = std::move(out);
    };
    permute(firm);
    permute(date);
    permute(industry);
    for (auto& c : data_) permute(c);
  }

  // Row ranges [begin, end) of each firm; requires sort().
  std::vector<std::pair<std::size_t, std::size_t>> firm_blocks() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < rows();) {
      std::size_t j = i;
      while (j < rows() && firm[j] == firm[i]) ++j;
      out.emplace_back(i, j);
      i = j;
    }
    return out;
  }

  // Key-column values as strings, for clustering and fixed effects.
  std::vector<std::string> key_strings(std::string_view dim) const {
    std::vector<std::string> out;
    out.reserve(rows());
    if (dim == "firm" || dim == "firm_id") out = firm;
    else if (dim == "date")
      for (const auto& d : date) out.push_back(format_date(d));
    else if (dim == "industry") out = industry;
    else throw ValidationError("unknown panel dimension '" + std::string(dim) + "'");
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<double>> data_;
};

// Dense 0..G-1 codes in order of first appearance after sorting the labels.
inline std::vector<int> encode_groups(const std::vector<std::string>& labels, std::size_t* groups = nullptr) {
  std::map<std::string, int> codes;
  for (const auto& l : labels) codes.emplace(l, 0);
  int next = 0;
  for (auto& [l, c] : codes) c = next++;
  std::vector<int> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(codes.at(l));
  if (groups) *groups = codes.size();
  return out;
}

inline bool is_key_column(std::string_view name) {
  return name == "firm_id" || name == "date" || name == "industry";
}

// CSV with firm_id,date[,industry] key columns and any numeric columns.
// Empty cells and "NA" are missing.
inline Panel read_panel(std::istream& in, const std::string& source) {
  csv::Reader reader(in, source);
  if (!reader.read_header()) throw ValidationError(source + ": empty panel file");
  const auto firm_col = reader.require_column("firm_id");
  const auto date_col = reader.require_column("date");
  const auto ind_col = reader.column("industry");
  const auto& header = reader.header();
  std::vector<std::pair<std::size_t, std::string>> numeric;
  for (std::size_t c = 0; c < header.size(); ++c)
    if (!is_key_column(header[c])) numeric.emplace_back(c, header[c]);

  Panel p;
  std::vector<std::vector<double>> values(numeric.size());
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() != header.size()) throw ParseError(source, reader.line(), "expected " + std::to_string(header.size()) + " columns");
    Date d;
    try {
      d = parse_date(row[date_col]);
    } catch (const Error& e) {
      throw ParseError(source, reader.line(), e.what());
    }
    p.firm.push_back(row[firm_col]);
    p.date.push_back(d);
    p.industry.push_back(ind_col ? row[*ind_col] : std::string());
    for (std::size_t k = 0; k < numeric.size(); ++k) {
      const auto cell = str::trim(row[numeric[k].first]);
      if (cell.empty() || cell == "NA" || cell == "nan") {
        values[k].push_back(kNaN);
        continue;
      }
      auto v = str::parse_double(cell);
      if (!v) throw ParseError(source, reader.line(), "column '" + numeric[k].second + "': bad number '" + std::string(cell) + "'");
      values[k].push_back(*v);
    }
  }
  for (std::size_t k = 0; k < numeric.size(); ++k) p.set_column(numeric[k].second, std::move(values[k]));
  p.sort();
  return p;
}

inline Panel load_panel(const std::string& path) {
  auto in = csv::open_input(path);
  return read_panel(in, path);
}

inline void write_panel(std::ostream& out, const Panel& p, const RunMetadata* meta = nullptr) {
  if (meta) meta->write_comment(out);
  std::vector<std::string> header = {"firm_id", "date", "industry"};
  for (const auto& n : p.column_names()) header.push_back(n);
  csv::write_row(out, header);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    std::vector<std::string> row = {p.firm[i], format_date(p.date[i]), p.industry[i]};
    for (const auto& n : p.column_names()) row.push_back(str::format_double(p.column(n)[i]));
    csv::write_row(out, row);
  }
}

}  // namespace emopipe::econo

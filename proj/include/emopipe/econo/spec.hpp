#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emopipe/common/error.hpp"
#include "emopipe/common/kvconfig.hpp"
#include "emopipe/common/strings.hpp"
#include "emopipe/econo/panel.hpp"

namespace emopipe::econo {

enum class ModelKind { fe, interaction, leads };

struct Filter {
  std::string column;
  std::string op;  // < <= > >= == !=
  double value = 0.0;

  bool pass(double v) const {
    if (is_missing(v)) return false;
    if (op == "<") return v < value;
    if (op == "<=") return v <= value;
    if (op == ">") return v > value;
    if (op == ">=") return v >= value;
    if (op == "==") return v == value;
    return v != value;
  }
};

// One regression as declared in a spec file. Each [section] is a spec; keys
// outside any section are defaults shared by all specs.
//
//   [baseline]
//   dependent = open_close
//   regressors = valence, sentiment, close_open, lag_open_close
//   fe = firm, date
//   cluster = industry, date
//   winsor = 0.001, 0.999        (or: none)
//   filter = n_messages >= 10; volatility > 0
//   model = fe | interaction | leads
//   moderator = volatility       (interaction)
//   moderator_side = above | below
//   interact = valence           (defaults to the first regressor)
//   horizons = 1, 2, 3, 4        (leads)
struct RegressionSpec {
  std::string name;
  std::string dependent;
  std::vector<std::string> regressors;
  std::vector<std::string> fixed_effects = {"firm", "date"};
  std::vector<std::string> clusters = {"industry", "date"};
  std::optional<std::pair<double, double>> winsor = std::make_pair(0.001, 0.999);
  std::vector<Filter> filters;
  ModelKind kind = ModelKind::fe;
  std::string moderator;
  bool moderator_above = true;
  std::string interact;
  std::vector<std::size_t> horizons = {1, 2, 3, 4};

  std::string source;
  std::size_t line = 0;                      // section header
  std::map<std::string, std::size_t> lines;  // key -> line it came from

  std::string where(const std::string& key) const {
    auto it = lines.find(key);
    return source + ":" + std::to_string(it == lines.end() ? line : it->second);
  }
};

inline std::vector<Filter> parse_filters(std::string_view text) {
  std::vector<Filter> out;
  for (const auto& part : str::split(text, ';')) {
    auto t = str::trim(part);
    if (t.empty()) continue;
    static const char* kOps[] = {"<=", ">=", "==", "!=", "<", ">"};
    bool matched = false;
    for (const char* op : kOps) {
      auto pos = t.find(op);
      if (pos == std::string_view::npos) continue;
      Filter f;
      f.column = std::string(str::trim(t.substr(0, pos)));
      f.op = op;
      auto v = str::parse_double(str::trim(t.substr(pos + std::string_view(op).size())));
      if (f.column.empty() || !v) throw ValidationError("bad filter '" + std::string(t) + "'");
      f.value = *v;
      out.push_back(f);
      matched = true;
      break;
    }
    if (!matched) throw ValidationError("bad filter '" + std::string(t) + "'");
  }
  return out;
}

namespace detail {

inline void apply_spec_entry(RegressionSpec& s, const kv::Entry& e) {
  s.lines[e.key] = e.line;
  auto fail = [&](const std::string& why) { throw ParseError(s.source, e.line, why); };
  try {
    if (e.key == "dependent") s.dependent = e.value;
    else if (e.key == "regressors") s.regressors = kv::list(e.value);
    else if (e.key == "fe") s.fixed_effects = e.value == "none" ? std::vector<std::string>{} : kv::list(e.value);
    else if (e.key == "cluster") s.clusters = e.value == "none" ? std::vector<std::string>{} : kv::list(e.value);
    else if (e.key == "winsor") {
      if (e.value == "none") {
        s.winsor.reset();
      } else {
        auto parts = kv::list(e.value);
        auto lo = parts.size() == 2 ? str::parse_double(parts[0]) : std::nullopt;
        auto hi = parts.size() == 2 ? str::parse_double(parts[1]) : std::nullopt;
        if (!lo || !hi || !(*lo >= 0.0 && *lo < *hi && *hi <= 1.0)) fail("winsor expects 'lo, hi' with 0 <= lo < hi <= 1");
        s.winsor = std::make_pair(*lo, *hi);
      }
    } else if (e.key == "filter") s.filters = parse_filters(e.value);
    else if (e.key == "model") {
      if (e.value == "fe") s.kind = ModelKind::fe;
      else if (e.value == "interaction") s.kind = ModelKind::interaction;
      else if (e.value == "leads") s.kind = ModelKind::leads;
      else fail("model must be fe, interaction or leads");
    } else if (e.key == "moderator") s.moderator = e.value;
    else if (e.key == "moderator_side") {
      if (e.value != "above" && e.value != "below") fail("moderator_side must be above or below");
      s.moderator_above = e.value == "above";
    } else if (e.key == "interact") s.interact = e.value;
    else if (e.key == "horizons") {
      s.horizons.clear();
      for (const auto& h : kv::list(e.value)) {
        auto v = str::parse_int(h);
        if (!v || *v < 0 || *v > 20) fail("bad horizon '" + h + "'");
        s.horizons.push_back(static_cast<std::size_t>(*v));
      }
    } else fail("unknown key '" + e.key + "'");
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& err) {
    fail(err.what());
  }
}

}  // namespace detail

inline std::vector<RegressionSpec> parse_specs(const kv::File& file) {
  std::vector<RegressionSpec> out;
  const kv::Section* defaults = file.section("");
  for (const auto& sec : file.sections) {
    if (sec.name.empty()) continue;
    RegressionSpec s;
    s.name = sec.name;
    s.source = file.source;
    s.line = sec.line;
    if (defaults)
      for (const auto& e : defaults->entries) detail::apply_spec_entry(s, e);
    for (const auto& e : sec.entries) detail::apply_spec_entry(s, e);
    if (s.dependent.empty()) throw ParseError(s.source, s.line, "spec [" + s.name + "] has no dependent");
    if (s.regressors.empty()) throw ParseError(s.source, s.line, "spec [" + s.name + "] has no regressors");
    if (s.kind == ModelKind::interaction && s.moderator.empty())
      throw ParseError(s.source, s.line, "interaction spec [" + s.name + "] needs a moderator");
    if (s.interact.empty()) s.interact = s.regressors.front();
    out.push_back(std::move(s));
  }
  if (out.empty()) throw ValidationError(file.source + ": no [spec] sections");
  return out;
}

inline std::vector<RegressionSpec> load_specs(const std::string& path) { return parse_specs(kv::load(path)); }

// Every referenced column and dimension must exist in the panel.
inline void validate_spec(const RegressionSpec& s, const Panel& p) {
  auto need = [&](const std::string& col, const std::string& key) {
    if (!p.has(col)) throw ValidationError(s.where(key) + ": spec [" + s.name + "] uses undefined column '" + col + "'");
  };
  need(s.dependent, "dependent");
  for (const auto& r : s.regressors) need(r, "regressors");
  for (const auto& f : s.filters) need(f.column, "filter");
  if (s.kind == ModelKind::interaction) need(s.moderator, "moderator");
  if (s.kind == ModelKind::leads)
    for (auto h : s.horizons)
      if (h > 0) need(s.dependent + "_lead" + std::to_string(h), "horizons");
  bool interact_listed = false;
  for (const auto& r : s.regressors) interact_listed = interact_listed || r == s.interact;
  if (s.kind == ModelKind::interaction && !interact_listed)
    throw ValidationError(s.where("interact") + ": '" + s.interact + "' is not among the regressors");
  auto dim = [&](const std::string& d, const std::string& key) {
    if (d != "firm" && d != "date" && d != "industry")
      throw ValidationError(s.where(key) + ": unknown dimension '" + d + "' (firm, date, industry)");
  };
  for (const auto& d : s.fixed_effects) dim(d, "fe");
  for (const auto& d : s.clusters) dim(d, "cluster");
  if (s.clusters.size() > 2) throw ValidationError(s.where("cluster") + ": at most two cluster dimensions");
}

}  // namespace emopipe::econo

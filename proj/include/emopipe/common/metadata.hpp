#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"

namespace emopipe {

inline constexpr std::string_view kVersion = "0.1.0";

inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
  return out;
}

// Provenance stamped at the top of every output file.
struct RunMetadata {
  std::string config_hash = hex64(fnv1a64(""));
  std::uint64_t seed = 42;
  std::string extra;  // free-form "key=value ..." appended to the header line

  // CSV and text outputs: a single '#' comment line.
  void write_comment(std::ostream& out) const {
    out << "# emopipe version=" << kVersion << " config_hash=" << config_hash << " seed=" << seed;
    if (!extra.empty()) out << ' ' << extra;
    out << '\n';
  }

  // JSONL outputs: a leading {"_meta": {...}} object that loaders skip.
  void write_json_line(std::ostream& out) const {
    nlohmann::ordered_json meta;
    meta["version"] = kVersion;
    meta["config_hash"] = config_hash;
    meta["seed"] = seed;
    if (!extra.empty()) meta["extra"] = extra;
    nlohmann::ordered_json line;
    line["_meta"] = meta;
    out << line.dump() << '\n';
  }
};

}  // namespace emopipe

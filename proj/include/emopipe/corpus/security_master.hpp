#pragma once

#include <map>
#include <string>
#include <vector>

#include "emopipe/common/csv.hpp"
#include "emopipe/common/error.hpp"
#include "emopipe/common/strings.hpp"

namespace emopipe::corpus {

struct SecurityRecord {
  std::string ticker;
  char secstat = 'A';
  char tpci = '0';
  int exchg = 0;
};

// Active common ordinary share listed on a US exchange.
inline bool passes_security_filters(const SecurityRecord& r) {
  return r.secstat != 'I' && r.tpci == '0' && (r.exchg == 11 || r.exchg == 12 || r.exchg == 14 || r.exchg == 17);
}

class SecurityMaster {
 public:
  // Duplicate tickers keep the first row.
  void add(SecurityRecord r) { records_.try_emplace(r.ticker, std::move(r)); }

  const SecurityRecord* find(const std::string& ticker) const {
    auto it = records_.find(ticker);
    return it == records_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return records_.size(); }

 private:
  std::map<std::string, SecurityRecord> records_;
};

inline SecurityMaster read_security_master(std::istream& in, const std::string& source) {
  csv::Reader reader(in, source);
  SecurityMaster master;
  if (!reader.read_header()) return master;
  const auto c_ticker = reader.require_column("ticker");
  const auto c_secstat = reader.require_column("secstat");
  const auto c_tpci = reader.require_column("tpci");
  const auto c_exchg = reader.require_column("exchg");
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() != reader.header().size()) throw ParseError(source, reader.line(), "wrong number of fields");
    SecurityRecord r;
    r.ticker = str::to_upper(str::trim(row[c_ticker]));
    auto secstat = str::trim(row[c_secstat]);
    auto tpci = str::trim(row[c_tpci]);
    r.secstat = secstat.empty() ? ' ' : secstat[0];
    r.tpci = tpci.empty() ? ' ' : tpci[0];
    auto ex = str::parse_int(row[c_exchg]);
    if (!ex) throw ParseError(source, reader.line(), "exchg must be an integer");
    r.exchg = static_cast<int>(*ex);
    master.add(std::move(r));
  }
  return master;
}

inline SecurityMaster load_security_master(const std::string& path) {
  auto in = csv::open_input(path);
  return read_security_master(in, path);
}

struct SecurityFilterStats {
  std::size_t missing_ticker = 0;  // rows whose ticker is absent from the master
  std::size_t rejected = 0;        // rows failing the status/type/exchange rules
};

// Keeps the items whose ticker passes the security filters. `ticker_of` maps an
// item to its ticker.
template <typename T, typename TickerOf>
std::vector<T> apply_security_filters(const std::vector<T>& items, const SecurityMaster& master,
                                      TickerOf ticker_of, SecurityFilterStats* stats = nullptr) {
  std::vector<T> out;
  for (const auto& item : items) {
    const SecurityRecord* r = master.find(ticker_of(item));
    if (!r) {
      if (stats) ++stats->missing_ticker;
      continue;
    }
    if (!passes_security_filters(*r)) {
      if (stats) ++stats->rejected;
      continue;
    }
    out.push_back(item);
  }
  return out;
}

}  // namespace emopipe::corpus

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "emopipe/common/date.hpp"
#include "emopipe/common/error.hpp"

namespace emopipe::corpus {

// Ordered set of trading dates, usually the distinct dates of the price panel.
class TradingCalendar {
 public:
  TradingCalendar() = default;

  explicit TradingCalendar(std::vector<Date> dates) : dates_(std::move(dates)) {
    std::sort(dates_.begin(), dates_.end());
    dates_.erase(std::unique(dates_.begin(), dates_.end()), dates_.end());
  }

  bool empty() const { return dates_.empty(); }
  std::size_t size() const { return dates_.size(); }
  const std::vector<Date>& dates() const { return dates_; }
  const Date& front() const { return dates_.front(); }
  const Date& back() const { return dates_.back(); }

  bool is_trading_day(const Date& d) const { return std::binary_search(dates_.begin(), dates_.end(), d); }

  // First trading date strictly after d.
  std::optional<Date> next_after(const Date& d) const {
    auto it = std::upper_bound(dates_.begin(), dates_.end(), d);
    if (it == dates_.end()) return std::nullopt;
    return *it;
  }

  // First trading date on or after d.
  std::optional<Date> on_or_after(const Date& d) const {
    auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
    if (it == dates_.end()) return std::nullopt;
    return *it;
  }

  // Last trading date strictly before d.
  std::optional<Date> prev_before(const Date& d) const {
    auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
    if (it == dates_.begin()) return std::nullopt;
    return *std::prev(it);
  }

  std::optional<std::size_t> index_of(const Date& d) const {
    auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
    if (it == dates_.end() || *it != d) return std::nullopt;
    return static_cast<std::size_t>(it - dates_.begin());
  }

 private:
  std::vector<Date> dates_;
};

}  // namespace emopipe::corpus

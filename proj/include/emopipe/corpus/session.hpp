#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "emopipe/common/date.hpp"
#include "emopipe/common/error.hpp"
#include "emopipe/corpus/calendar.hpp"

namespace emopipe::corpus {

enum class Session { premarket, market };

inline std::string_view to_string(Session s) { return s == Session::premarket ? "premarket" : "market"; }

inline Session parse_session(std::string_view s) {
  if (s == "premarket") return Session::premarket;
  if (s == "market") return Session::market;
  throw ValidationError("bad session '" + std::string(s) + "'");
}

struct SessionSlot {
  Date trade_date;
  Session session = Session::premarket;

  friend bool operator==(const SessionSlot&, const SessionSlot&) = default;
};

struct SessionKey {
  std::string ticker;
  Date trade_date;
  Session session = Session::premarket;

  friend bool operator==(const SessionKey&, const SessionKey&) = default;
  friend auto operator<=>(const SessionKey& a, const SessionKey& b) {
    if (auto c = a.ticker <=> b.ticker; c != 0) return c;
    if (auto c = a.trade_date <=> b.trade_date; c != 0) return c;
    return a.session <=> b.session;
  }
};

class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kMarketOpenMinute = 9 * 60 + 30;  // 09:30
inline constexpr int kMarketCloseMinute = 16 * 60;     // 16:00, inclusive

// Maps an exchange-local minute to its trading session. Market hours are
// [09:30, 16:00] on a trading day. Everything after 16:00, before 09:30, or on a
// non-trading day belongs to the premarket session of the next trading day.
inline SessionSlot assign_session(const LocalMinute& t, const TradingCalendar& calendar) {
  if (calendar.empty()) throw OutOfRangeError("empty trading calendar");
  if (t.date < calendar.front() || t.date > calendar.back())
    throw OutOfRangeError("timestamp " + format_local(t) + " outside calendar " + format_date(calendar.front()) +
                          ".." + format_date(calendar.back()));
  if (calendar.is_trading_day(t.date)) {
    if (t.minute < kMarketOpenMinute) return {t.date, Session::premarket};
    if (t.minute <= kMarketCloseMinute) return {t.date, Session::market};
    auto next = calendar.next_after(t.date);
    if (!next) throw OutOfRangeError("timestamp " + format_local(t) + " after the last trading session");
    return {*next, Session::premarket};
  }
  // Weekend/holiday: date lies strictly inside the calendar, so a next day exists.
  return {*calendar.next_after(t.date), Session::premarket};
}

}  // namespace emopipe::corpus

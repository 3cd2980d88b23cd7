#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "emopipe/common/error.hpp"
#include "emopipe/common/strings.hpp"

namespace emopipe {

using Date = std::chrono::year_month_day;

inline Date make_date(int y, unsigned m, unsigned d) {
  return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

inline std::int64_t day_number(const Date& d) {
  return std::chrono::sys_days{d}.time_since_epoch().count();
}

inline Date from_day_number(std::int64_t n) {
  return Date{std::chrono::sys_days{std::chrono::days{n}}};
}

inline Date add_days(const Date& d, std::int64_t n) { return from_day_number(day_number(d) + n); }

// ISO weekday, Monday = 1 ... Sunday = 7.
inline unsigned iso_weekday(const Date& d) {
  return std::chrono::weekday{std::chrono::sys_days{d}}.iso_encoding();
}

inline std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

inline Date parse_date(std::string_view s) {
  s = str::trim(s);
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') throw ValidationError("bad date '" + std::string(s) + "'");
  auto y = str::parse_int(s.substr(0, 4));
  auto m = str::parse_int(s.substr(5, 2));
  auto d = str::parse_int(s.substr(8, 2));
  if (!y || !m || !d) throw ValidationError("bad date '" + std::string(s) + "'");
  Date out = make_date(static_cast<int>(*y), static_cast<unsigned>(*m), static_cast<unsigned>(*d));
  if (!out.ok()) throw ValidationError("bad date '" + std::string(s) + "'");
  return out;
}

// Wall-clock minute in the exchange's local time zone.
struct LocalMinute {
  Date date;
  int minute = 0;  // minutes after local midnight, 0..1439

  friend bool operator==(const LocalMinute&, const LocalMinute&) = default;
};

inline std::string format_local(const LocalMinute& t) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%02d:%02d", t.minute / 60, t.minute % 60);
  return format_date(t.date) + "T" + buf;
}

namespace detail {

// n-th (1-based) Sunday of a month; n = 0 means the last one.
inline Date nth_sunday(int year, unsigned month, unsigned n) {
  using namespace std::chrono;
  if (n == 0) {
    sys_days last{year_month_day_last{std::chrono::year{year}, month_day_last{std::chrono::month{month}}}};
    while (weekday{last} != Sunday) last -= days{1};
    return Date{last};
  }
  return Date{sys_days{std::chrono::year{year} / std::chrono::month{month} / Sunday[n]}};
}

}  // namespace detail

// US Eastern offset from UTC in minutes (-300 standard, -240 daylight) at a UTC
// instant given as minutes since the epoch. Rules: 2007 onward second Sunday of
// March to first Sunday of November; earlier, first Sunday of April to last
// Sunday of October. Transitions at 02:00 local.
inline int us_eastern_offset(std::int64_t utc_minutes) {
  const std::int64_t day = (utc_minutes >= 0 ? utc_minutes : utc_minutes - 1439) / 1440;
  const int year = static_cast<int>(from_day_number(day).year());
  Date start = year >= 2007 ? detail::nth_sunday(year, 3, 2) : detail::nth_sunday(year, 4, 1);
  Date end = year >= 2007 ? detail::nth_sunday(year, 11, 1) : detail::nth_sunday(year, 10, 0);
  // 02:00 EST = 07:00 UTC; 02:00 EDT = 06:00 UTC.
  const std::int64_t dst_begin = day_number(start) * 1440 + 7 * 60;
  const std::int64_t dst_end = day_number(end) * 1440 + 6 * 60;
  return (utc_minutes >= dst_begin && utc_minutes < dst_end) ? -240 : -300;
}

// Parses an RFC 3339 timestamp (offset or 'Z' required), truncates to the
// minute, and returns minutes since the epoch in UTC.
inline std::int64_t parse_rfc3339_utc_minutes(std::string_view s) {
  auto fail = [&] { return ValidationError("bad RFC 3339 timestamp '" + std::string(s) + "'"); };
  s = str::trim(s);
  if (s.size() < 17 || (s[10] != 'T' && s[10] != 't' && s[10] != ' ')) throw fail();
  Date d = parse_date(s.substr(0, 10));
  auto hh = str::parse_int(s.substr(11, 2));
  auto mm = str::parse_int(s.substr(14, 2));
  if (!hh || !mm || s[13] != ':' || *hh > 23 || *mm > 59) throw fail();
  std::size_t pos = 16;
  if (pos < s.size() && s[pos] == ':') {
    pos += 3;  // seconds are truncated
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      while (pos < s.size() && str::is_digit(s[pos])) ++pos;
    }
  }
  if (pos >= s.size()) throw fail();
  int offset = 0;
  if (s[pos] == 'Z' || s[pos] == 'z') {
    if (pos + 1 != s.size()) throw fail();
  } else if (s[pos] == '+' || s[pos] == '-') {
    if (s.size() != pos + 6 || s[pos + 3] != ':') throw fail();
    auto oh = str::parse_int(s.substr(pos + 1, 2));
    auto om = str::parse_int(s.substr(pos + 4, 2));
    if (!oh || !om) throw fail();
    offset = static_cast<int>(*oh * 60 + *om) * (s[pos] == '-' ? -1 : 1);
  } else {
    throw fail();
  }
  return day_number(d) * 1440 + *hh * 60 + *mm - offset;
}

inline LocalMinute to_us_eastern(std::int64_t utc_minutes) {
  const std::int64_t local = utc_minutes + us_eastern_offset(utc_minutes);
  const std::int64_t day = (local >= 0 ? local : local - 1439) / 1440;
  return {from_day_number(day), static_cast<int>(local - day * 1440)};
}

}  // namespace emopipe

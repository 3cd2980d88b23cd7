#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emopipe/common/date.hpp"
#include "emopipe/common/parallel.hpp"
#include "emopipe/econo/panel.hpp"

namespace emopipe::econo {

enum class VolatilityWindow { calendar_days, trading_rows };

inline std::optional<VolatilityWindow> parse_volatility_window(std::string_view s) {
  if (s == "calendar") return VolatilityWindow::calendar_days;
  if (s == "trading") return VolatilityWindow::trading_rows;
  return std::nullopt;
}

struct ReturnOptions {
  std::size_t momentum_days = 20;  // return_{-20,-1}
  std::size_t volatility_days = 183;
  VolatilityWindow volatility_window = VolatilityWindow::calendar_days;
  std::size_t leads = 4;
};

// Column names produced by compute_returns.
inline constexpr const char* kOpenClose = "open_close";
inline constexpr const char* kCloseOpen = "close_open";
inline constexpr const char* kLagOpenClose = "lag_open_close";
inline constexpr const char* kMomentum = "ret_m20_m1";
inline constexpr const char* kVolatility = "volatility";
inline constexpr const char* kLogMcap = "log_mcap";

inline std::string lead_name(std::string_view dependent, std::size_t h) {
  return std::string(dependent) + "_lead" + std::to_string(h);
}

namespace detail {

inline double ratio_return(double now, double before) {
  if (is_missing(now) || is_missing(before) || !(before > 0.0)) return kNaN;
  return (now - before) / before;
}

inline double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return kNaN;
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace detail

// Derives returns and controls from open/close (and shares, when present) per
// firm over its date-sorted rows:
//   open_close      (close - open) / open
//   close_open      (open_t - close_{t-1}) / close_{t-1}
//   lag_open_close  open_close_{t-1}
//   ret_m20_m1      prod(1 + r_s) - 1 over the 20 close-to-close returns ending at t-1
//   volatility      sample SD of close-to-close returns dated in [t - 183 days, t - 1]
//   log_mcap        ln(1 + shares_{t-1} * close_{t-1})
//   open_close_leadh open_close_{t+h}
// Rows are consecutive observations of the firm; a missing input or a
// non-positive price leaves the derived value missing.
inline void compute_returns(Panel& p, const ReturnOptions& opt = {}) {
  p.sort();
  const auto& open = p.column("open");
  const auto& close = p.column("close");
  const std::vector<double>* shares = p.has("shares") ? &p.column("shares") : nullptr;
  const std::size_t n = p.rows();
  std::vector<double> oc(n, kNaN), co(n, kNaN), lag(n, kNaN), mom(n, kNaN), vol(n, kNaN), mcap(n, kNaN);
  std::vector<std::vector<double>> lead(opt.leads, std::vector<double>(n, kNaN));
  const auto blocks = p.firm_blocks();

  parallel_for(blocks.size(), [&](std::size_t b) {
    const auto [lo, hi] = blocks[b];
    std::vector<double> daily(hi - lo, kNaN);  // close-to-close return at each row
    for (std::size_t i = lo; i < hi; ++i) {
      oc[i] = detail::ratio_return(close[i], open[i]);
      if (i > lo) daily[i - lo] = detail::ratio_return(close[i], close[i - 1]);
    }
    for (std::size_t i = lo; i < hi; ++i) {
      const std::size_t k = i - lo;
      if (i > lo) {
        co[i] = detail::ratio_return(open[i], close[i - 1]);
        lag[i] = oc[i - 1];
        if (shares && !is_missing((*shares)[i - 1]) && !is_missing(close[i - 1]) && (*shares)[i - 1] * close[i - 1] >= 0.0)
          mcap[i] = std::log1p((*shares)[i - 1] * close[i - 1]);
      }
      if (k > opt.momentum_days) {  // daily[0] has no prior close
        double growth = 1.0;
        for (std::size_t s = k - opt.momentum_days; s < k; ++s) growth *= 1.0 + daily[s];
        mom[i] = growth - 1.0;  // NaN propagates
      }
      std::vector<double> window;
      if (opt.volatility_window == VolatilityWindow::calendar_days) {
        const auto first = day_number(p.date[i]) - static_cast<std::int64_t>(opt.volatility_days);
        for (std::size_t s = k; s-- > 1;) {
          if (day_number(p.date[lo + s]) < first) break;
          if (!is_missing(daily[s])) window.push_back(daily[s]);
        }
      } else {
        for (std::size_t s = k; s-- > 1 && k - s <= opt.volatility_days;)
          if (!is_missing(daily[s])) window.push_back(daily[s]);
      }
      vol[i] = detail::sample_sd(window);
      for (std::size_t h = 1; h <= opt.leads; ++h)
        if (i + h < hi) lead[h - 1][i] = oc[i + h];
    }
  });

  p.set_column(kOpenClose, std::move(oc));
  p.set_column(kCloseOpen, std::move(co));
  p.set_column(kLagOpenClose, std::move(lag));
  p.set_column(kMomentum, std::move(mom));
  p.set_column(kVolatility, std::move(vol));
  if (shares) p.set_column(kLogMcap, std::move(mcap));
  for (std::size_t h = 1; h <= opt.leads; ++h) p.set_column(lead_name(kOpenClose, h), std::move(lead[h - 1]));
}

}  // namespace emopipe::econo

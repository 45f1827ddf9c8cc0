#include "vacuum/rates.hpp"

#include <cmath>
#include <string>

#include "vacuum/error.hpp"

namespace vacuum {

RateFit fit_power_law(std::span<const TimeSeriesPoint> series, FitWindow window,
                      bool log_correction, std::string quantity) {
  if (!(window.t_hi >= 10.0 * window.t_lo) || !(window.t_lo > 0.0))
    fail(ErrorKind::insufficient_samples,
         "fit window must be positive and span a decade: [" +
             std::to_string(window.t_lo) + ", " + std::to_string(window.t_hi) + "]");
  RateFit fit;
  fit.quantity = std::move(quantity);
  fit.t_lo = window.t_lo;
  fit.t_hi = window.t_hi;
  fit.log_correction = log_correction;

  std::vector<double> xs, ys;
  int in_window = 0;
  for (const auto& p : series) {
    if (p.t < window.t_lo || p.t > window.t_hi) continue;
    ++in_window;
    const double q = p.value;
    // On the log branch the model needs log(1+t) > 0, which t_lo > 0 ensures.
    if (!(q > 0.0) || !std::isfinite(q)) {
      ++fit.samples_excluded;
      continue;
    }
    const double x = std::log1p(p.t);
    double y = std::log(q);
    if (log_correction) y -= std::log(x);
    xs.push_back(x);
    ys.push_back(y);
  }
  if (in_window > 0 && xs.empty())
    fail(ErrorKind::all_nonpositive,
         "no positive samples of '" + fit.quantity + "' in window");
  if (static_cast<int>(xs.size()) < kMinFitSamples)
    fail(ErrorKind::insufficient_samples,
         std::to_string(xs.size()) + " usable samples of '" + fit.quantity +
             "' in window (need " + std::to_string(kMinFitSamples) + ")");

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.exponent * xs[i]);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.exponent_stderr = n > 2.0 ? std::sqrt(ss_res / (n - 2.0) / sxx) : 0.0;
  fit.samples_used = static_cast<int>(xs.size());
  return fit;
}

TimeSeries make_series(std::span<const double> t, std::span<const double> q) {
  TimeSeries s;
  s.reserve(t.size());
  for (std::size_t i = 0; i < t.size() && i < q.size(); ++i)
    s.push_back({t[i], std::abs(q[i])});
  return s;
}

}  // namespace vacuum

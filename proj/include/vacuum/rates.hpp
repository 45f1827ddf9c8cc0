#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vacuum {

struct TimeSeriesPoint {
  double t;
  double value;
};
using TimeSeries = std::vector<TimeSeriesPoint>;

// Least-squares fit of log|q| = p log(1+t) + c  (+ log log(1+t) on the
// log-corrected branch) restricted to t in [t_lo, t_hi].
struct RateFit {
  std::string quantity;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double exponent = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double exponent_stderr = 0.0;
  int samples_used = 0;
  int samples_excluded = 0;  // zero, negative or non-finite values in window
  double predicted_exponent = 0.0;
  bool log_correction = false;
};

struct FitWindow {
  double t_lo = 0.0;
  double t_hi = 0.0;

  bool operator==(const FitWindow&) const = default;
};

inline constexpr int kMinFitSamples = 20;

// InsufficientSamples when fewer than kMinFitSamples usable points remain;
// AllNonpositive when the window has samples but none positive. The window
// must span at least one decade in t (t_hi >= 10 t_lo).
RateFit fit_power_law(std::span<const TimeSeriesPoint> series, FitWindow window,
                      bool log_correction = false, std::string quantity = {});

// |q| paired with t, ready for fitting magnitudes.
TimeSeries make_series(std::span<const double> t, std::span<const double> q);

}  // namespace vacuum

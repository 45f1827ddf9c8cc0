#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "vacuum/error.hpp"

namespace vacuum {

template <std::size_t N>
using OdeVector = std::array<double, N>;

template <std::size_t N>
struct OdeSample {
  double t;
  OdeVector<N> y;
  OdeVector<N> dydt;
};

struct OdeOptions {
  // Local error per step, measured componentwise against tol*(1+|y|).
  double tol = 1e-10;
  double initial_step = 1e-4;
  double max_step = 1e300;
  double min_step = 1e-14;
  long max_steps = 10'000'000;
};

// Dormand-Prince 5(4) with a PI step-size controller. Returns the accepted
// steps (including the initial point) with the derivative at each, which is
// what cubic Hermite dense output needs.
template <std::size_t N, class Rhs>
std::vector<OdeSample<N>> integrate_dopri5(Rhs&& rhs, double t0,
                                           OdeVector<N> y0, double t_end,
                                           const OdeOptions& opt) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b - b_hat
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  constexpr double safety = 0.9;
  constexpr double beta = 0.04;  // PI memory
  constexpr double expo = 0.2 - beta * 0.75;
  constexpr double min_factor = 0.2, max_factor = 10.0;

  std::vector<OdeSample<N>> out;
  double t = t0;
  OdeVector<N> y = y0;
  OdeVector<N> k1 = rhs(t, y);
  out.push_back({t, y, k1});

  double h = std::min(opt.initial_step, t_end - t0);
  double err_old = 1e-4;
  bool rejected = false;
  long steps = 0;

  auto combine = [](const OdeVector<N>& base, double dt,
                    std::initializer_list<std::pair<double, const OdeVector<N>*>> terms) {
    OdeVector<N> r = base;
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      for (const auto& [c, k] : terms) acc += c * (*k)[i];
      r[i] += dt * acc;
    }
    return r;
  };

  while (t < t_end) {
    if (++steps > opt.max_steps)
      fail(ErrorKind::step_size_underflow, "step budget exhausted at t=" + std::to_string(t));
    const bool last = t + h >= t_end;
    if (last) h = t_end - t;

    const OdeVector<N> k2 = rhs(t + c2 * h, combine(y, h, {{a21, &k1}}));
    const OdeVector<N> k3 = rhs(t + c3 * h, combine(y, h, {{a31, &k1}, {a32, &k2}}));
    const OdeVector<N> k4 =
        rhs(t + c4 * h, combine(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const OdeVector<N> k5 = rhs(
        t + c5 * h, combine(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const OdeVector<N> k6 =
        rhs(t + h, combine(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const OdeVector<N> y_new =
        combine(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const double t_new = last ? t_end : t + h;
    const OdeVector<N> k7 = rhs(t_new, y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
      const double scale = opt.tol * (1.0 + std::max(std::abs(y[i]), std::abs(y_new[i])));
      err = std::max(err, std::abs(e) / scale);
    }

    if (err <= 1.0) {
      double factor = err == 0.0 ? max_factor
                                 : safety * std::pow(err, -expo) * std::pow(err_old, beta);
      factor = std::clamp(factor, min_factor, rejected ? 1.0 : max_factor);
      err_old = std::max(err, 1e-4);
      t = t_new;
      y = y_new;
      k1 = k7;
      out.push_back({t, y, k1});
      h = std::min(h * factor, opt.max_step);
      rejected = false;
    } else {
      const double factor = std::max(min_factor, safety * std::pow(err, -0.2));
      h *= factor;
      rejected = true;
    }
    if (h < opt.min_step * std::max(1.0, std::abs(t)))
      fail(ErrorKind::step_size_underflow,
           "step size " + std::to_string(h) + " underflowed at t=" + std::to_string(t));
  }
  return out;
}

}  // namespace vacuum

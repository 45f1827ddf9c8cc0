#pragma once

#include <functional>

namespace vacuum {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

// Globally adaptive Gauss-Kronrod (7/15 point) integration on [a, b]. The
// interval with the largest error estimate is bisected until the summed
// estimate drops below max(abs_tol, rel_tol*|value|) or max_intervals is hit.
// Integrand is never evaluated at the endpoints.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol = 1e-12,
                                    double abs_tol = 0.0,
                                    int max_intervals = 4000);

}  // namespace vacuum

#pragma once

#include <optional>

namespace vacuum {

// Gas law p = rho^gamma / gamma with damping -mu/(1+t)^lambda * rho*u.
struct GasParameters {
  double gamma = 1.5;
  double lambda = 0.5;
  double mu = 1.0;
  // Time-weight offset of the energy functionals; only active when lambda < 1.
  double delta = 0.6;

  double alpha() const { return 1.0 / (gamma - 1.0); }
  double beta() const { return lambda + 1.0; }
  // Self-similar expansion exponent (lambda+1)/(gamma+1).
  double expansion_exponent() const { return (lambda + 1.0) / (gamma + 1.0); }
  bool lambda_below_one() const { return lambda < 1.0; }
  // delta * 1_{lambda<1}
  double active_delta() const { return lambda_below_one() ? delta : 0.0; }
  double delta_upper_bound() const { return 2.0 * (lambda + 1.0) / (gamma + 1.0); }
  // (lambda<1, mu>0) or (lambda=1, mu>2).
  bool global_existence_regime() const;

  // Damping coefficient mu/(1+t)^lambda.
  double damping(double t) const;

  // m = 4+[alpha] (lambda<1) or min{4+[alpha], [mu+2/(gamma+1)]} (lambda=1).
  int derivative_count() const;

  bool operator==(const GasParameters&) const = default;
};

// Builds a parameter set with delta defaulted to the midpoint of its interval.
GasParameters make_parameters(double gamma, double lambda, double mu,
                              std::optional<double> delta = std::nullopt);

// Throws Error(invalid_parameters) unless gamma>1, mu>0, 0<lambda<=1 and
// 0<delta<2(lambda+1)/(gamma+1). The global-existence regime is not required.
void validate(const GasParameters& params);

}  // namespace vacuum

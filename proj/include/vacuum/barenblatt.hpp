#pragma once

#include <utility>

#include "vacuum/gas_parameters.hpp"

namespace vacuum {

// Constants of the modified Barenblatt solution
//   rho(x,t) = (1+t)^{-b} [A - B (1+t)^{-2b} x^2]^{1/(gamma-1)},  b = (1+lambda)/(gamma+1).
struct BarenblattProfile {
  double A = 0.0;
  double B = 0.0;
  double mass = 0.0;
  // sqrt(A/B): half-width of the reference interval at t = 0.
  double L = 0.0;
  // int_{-1}^{1} (1-y^2)^{1/(gamma-1)} dy
  double normalization = 0.0;
};

// int_{-1}^{1} (1-y^2)^{alpha} dy by adaptive quadrature (relative error <= 1e-12).
double profile_normalization(double alpha);

BarenblattProfile derive_profile(const GasParameters& params, double mass);

// sigma(x) = A - B x^2 = rho_0^{gamma-1}; DomainError outside [-L, L].
double sigma(const BarenblattProfile& profile, double x);
double sigma_derivative(const BarenblattProfile& profile, double x);

double barenblatt_density(const BarenblattProfile& profile,
                          const GasParameters& params, double x, double t);
// Same as barenblatt_density but 0 outside the support.
double barenblatt_density_clamped(const BarenblattProfile& profile,
                                  const GasParameters& params, double x,
                                  double t);
double barenblatt_velocity(const GasParameters& params, double x, double t);
std::pair<double, double> barenblatt_boundary(const BarenblattProfile& profile,
                                              const GasParameters& params,
                                              double t);

// Total mass of rho(., t) by quadrature over the moving support.
double barenblatt_mass(const BarenblattProfile& profile,
                       const GasParameters& params, double t);

// Pointwise residuals, built from closed-form derivatives, of
//   rho_t - ((1+t)^lambda/mu) p(rho)_xx       (porous-media equation)
//   u + ((1+t)^lambda/mu) p(rho)_x / rho      (Darcy law)
// with p = rho^gamma/gamma. Points must lie strictly inside the support.
struct PorousMediaResidual {
  double mass_equation = 0.0;
  double darcy_law = 0.0;
  // magnitude of the largest term, for relative comparisons
  double scale = 0.0;
};
PorousMediaResidual porous_media_residual(const BarenblattProfile& profile,
                                          const GasParameters& params, double x,
                                          double t);

}  // namespace vacuum

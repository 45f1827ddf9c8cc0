#include "vacuum/barenblatt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vacuum/error.hpp"
#include "vacuum/quadrature.hpp"

namespace vacuum {

namespace {

constexpr double kSupportSlack = 1e-12;

// (1+t)^{(1+lambda)/(gamma+1)}
double expansion_factor(const GasParameters& params, double t) {
  return std::pow(1.0 + t, params.expansion_exponent());
}

// Bracket A - B s^{-2b} x^2, clamped at 0 when the point sits on the boundary
// up to rounding. Returns a negative value when x is genuinely outside.
double similarity_bracket(const BarenblattProfile& profile,
                          const GasParameters& params, double x, double t) {
  const double scale = expansion_factor(params, t);
  const double xi = x / scale;
  const double bracket = profile.A - profile.B * xi * xi;
  if (bracket < 0.0 && bracket > -kSupportSlack * profile.A) return 0.0;
  return bracket;
}

}  // namespace

double profile_normalization(double alpha) {
  // y = sin(theta) turns (1-y^2)^alpha dy into the smooth cos^{2 alpha+1}.
  const auto integrand = [alpha](double theta) {
    return std::pow(std::cos(theta), 2.0 * alpha + 1.0);
  };
  const double half_pi = 0.5 * std::numbers::pi;
  return integrate_adaptive(integrand, -half_pi, half_pi, 1e-13).value;
}

BarenblattProfile derive_profile(const GasParameters& params, double mass) {
  validate(params);
  if (!(mass > 0.0) || !std::isfinite(mass))
    fail(ErrorKind::invalid_parameters,
         "total mass must be positive, got " + std::to_string(mass));
  const double g = params.gamma;
  BarenblattProfile profile;
  profile.mass = mass;
  profile.B = params.mu * (1.0 + params.lambda) * (g - 1.0) / (2.0 * (g + 1.0));
  profile.normalization = profile_normalization(params.alpha());
  const double rhs = mass * std::sqrt(profile.B) / profile.normalization;
  profile.A = std::pow(rhs, 2.0 * (g - 1.0) / (g + 1.0));
  profile.L = std::sqrt(profile.A / profile.B);
  return profile;
}

double sigma(const BarenblattProfile& profile, double x) {
  if (std::abs(x) > profile.L * (1.0 + kSupportSlack))
    fail(ErrorKind::domain_error,
         "sigma evaluated outside the reference interval at x=" +
             std::to_string(x));
  return std::max(0.0, profile.A - profile.B * x * x);
}

double sigma_derivative(const BarenblattProfile& profile, double x) {
  return -2.0 * profile.B * x;
}

double barenblatt_density(const BarenblattProfile& profile,
                          const GasParameters& params, double x, double t) {
  const double bracket = similarity_bracket(profile, params, x, t);
  if (bracket < 0.0)
    fail(ErrorKind::domain_error, "density evaluated outside the support at x=" +
                                      std::to_string(x) +
                                      ", t=" + std::to_string(t));
  return std::pow(bracket, params.alpha()) / expansion_factor(params, t);
}

double barenblatt_density_clamped(const BarenblattProfile& profile,
                                  const GasParameters& params, double x,
                                  double t) {
  const double bracket = similarity_bracket(profile, params, x, t);
  if (bracket <= 0.0) return 0.0;
  return std::pow(bracket, params.alpha()) / expansion_factor(params, t);
}

double barenblatt_velocity(const GasParameters& params, double x, double t) {
  return (1.0 + params.lambda) * x / ((params.gamma + 1.0) * (1.0 + t));
}

std::pair<double, double> barenblatt_boundary(const BarenblattProfile& profile,
                                              const GasParameters& params,
                                              double t) {
  const double edge = profile.L * expansion_factor(params, t);
  return {-edge, edge};
}

double barenblatt_mass(const BarenblattProfile& profile,
                       const GasParameters& params, double t) {
  const double edge = barenblatt_boundary(profile, params, t).second;
  const auto integrand = [&](double theta) {
    const double x = edge * std::sin(theta);
    return barenblatt_density_clamped(profile, params, x, t) * edge *
           std::cos(theta);
  };
  const double half_pi = 0.5 * std::numbers::pi;
  return integrate_adaptive(integrand, -half_pi, half_pi, 1e-13).value;
}

PorousMediaResidual porous_media_residual(const BarenblattProfile& profile,
                                          const GasParameters& params, double x,
                                          double t) {
  const double s = 1.0 + t;
  const double b = params.expansion_exponent();
  const double alpha = params.alpha();
  const double g = params.gamma;
  const double shrink = std::pow(s, -2.0 * b);

  const double S = profile.A - profile.B * shrink * x * x;
  if (!(S > 0.0))
    fail(ErrorKind::domain_error,
         "residual requires an interior point, got x=" + std::to_string(x));
  const double S_t = 2.0 * b * profile.B * shrink / s * x * x;
  const double S_x = -2.0 * profile.B * shrink * x;
  const double S_xx = -2.0 * profile.B * shrink;

  const double rho = std::pow(s, -b) * std::pow(S, alpha);
  const double rho_t = -b * std::pow(s, -b - 1.0) * std::pow(S, alpha) +
                       std::pow(s, -b) * alpha * std::pow(S, alpha - 1.0) * S_t;
  // p = rho^gamma/gamma = s^{-b gamma} S^{alpha+1}/gamma and (alpha+1)/gamma = alpha.
  const double p_weight = std::pow(s, -b * g);
  const double p_x = alpha * p_weight * std::pow(S, alpha) * S_x;
  const double p_xx = alpha * p_weight *
                      (alpha * std::pow(S, alpha - 1.0) * S_x * S_x +
                       std::pow(S, alpha) * S_xx);
  const double mobility = std::pow(s, params.lambda) / params.mu;
  const double u = barenblatt_velocity(params, x, t);

  PorousMediaResidual r;
  r.mass_equation = rho_t - mobility * p_xx;
  r.darcy_law = u + mobility * p_x / rho;
  r.scale = std::max({std::abs(rho_t), std::abs(mobility * p_xx), std::abs(u)});
  return r;
}

}  // namespace vacuum

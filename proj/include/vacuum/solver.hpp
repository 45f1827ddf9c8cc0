#pragma once

#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vacuum/barenblatt.hpp"
#include "vacuum/correction.hpp"
#include "vacuum/gas_parameters.hpp"

namespace vacuum {

// Uniform nodes on the reference interval [-L, L]; sigma = A - B x^2 vanishes
// exactly at both end nodes.
struct Grid {
  int n_cells = 0;
  double dx = 0.0;
  double half_width = 0.0;
  std::vector<double> nodes;        // n_cells + 1
  std::vector<double> midpoints;    // n_cells
  std::vector<double> sigma_nodes;  // n_cells + 1
  std::vector<double> sigma_mid;    // n_cells
  double sigma_slope_left = 0.0;    // sigma_x(-L) = 2 B L
  double sigma_slope_right = 0.0;   // sigma_x(+L) = -2 B L

  std::size_t size() const { return nodes.size(); }
};

// n_cells must be even and at least 8 (InvalidGrid otherwise).
Grid build_grid(const BarenblattProfile& profile, int n_cells);

// Second-order first derivative at nodes: centered inside, one-sided at ends.
std::vector<double> node_derivative(const Grid& grid, std::span<const double> f);
// (f_{i+1} - f_i)/dx at each midpoint.
std::vector<double> midpoint_derivative(const Grid& grid, std::span<const double> f);

struct SolverState {
  double t = 0.0;
  std::vector<double> w;    // eta - eta_tilde at nodes
  std::vector<double> w_t;
  long step_count = 0;
  double dt_current = 0.0;
};

enum class InitialPreset { dilation, bump, kick };

InitialPreset parse_preset(std::string_view name);
std::string_view to_string(InitialPreset preset);

// dilation: w = eps x; bump: w = eps x sigma(x)/A; kick: w_t = eps x.
SolverState initial_data(const Grid& grid, const BarenblattProfile& profile,
                         InitialPreset preset, double amplitude);
SolverState initial_data(const Grid& grid, const BarenblattProfile& profile,
                         std::string_view preset, double amplitude);

// Map positivity threshold: eta_x <= kMapDegeneracyRatio * eta_tilde_x fails.
inline constexpr double kMapDegeneracyRatio = 1e-10;

// Semi-discrete perturbation equation on a fixed grid. Interior nodes use
// conservative flux differencing
//   w_tt = -d(t) w_t - (1/gamma) sigma_i^{-alpha} (F_{i+1/2} - F_{i-1/2}) / dx,
//   F = sigma^{alpha+1} G(w_x),  G(s) = (eta_x + s)^{-gamma} - eta_x^{-gamma},
// and the two end nodes, where sigma = 0, use the degenerate limit
//   w_tt = -d(t) w_t - alpha sigma_x G(w_x).
class PerturbationOperator {
 public:
  PerturbationOperator(const Grid& grid, const GasParameters& params);

  const Grid& grid() const { return *grid_; }
  const GasParameters& params() const { return params_; }

  // Accelerations at time t for the ansatz stretch eta_x. Throws MapDegenerate.
  void acceleration(double t, double eta_x, std::span<const double> w,
                    std::span<const double> w_t, std::span<double> out) const;

  // d/dt of the acceleration along the flow, given w_tt, the ansatz stretch
  // and its rate. Exact for the semi-discrete system.
  void acceleration_rate(double t, double eta_x, double eta_x_rate,
                         std::span<const double> w, std::span<const double> w_t,
                         std::span<const double> w_tt, std::span<double> out) const;

  // cfl*dx/c_max with c_max = max_mid sqrt(sigma (eta_x + w_x)^{-gamma-1}),
  // capped by 0.5 (1+t)^lambda / mu.
  double stable_time_step(double t, double eta_x, std::span<const double> w,
                          double cfl) const;

  // Smallest eta_tilde_x + w_x over midpoints and end nodes.
  double min_stretch(double eta_x, std::span<const double> w) const;

 private:
  const Grid* grid_;
  GasParameters params_;
  std::vector<double> flux_weight_;   // sigma_mid^{alpha+1}
  std::vector<double> inv_density_;   // sigma_nodes^{-alpha} (interior only)
  mutable std::vector<double> flux_;  // scratch
};

// G(s) = (e+s)^{-gamma} - e^{-gamma} without cancellation for small s.
double stress_increment(double eta_x, double s, double gamma);

std::vector<double> rhs_acceleration(const SolverState& state, const Grid& grid,
                                     const GasParameters& params,
                                     const AnsatzEvaluation& ansatz);

// One classical RK4 step. The step is min(CFL step, damping cap, max_dt).
// CflUnderflow when the CFL step drops below 1e-14.
SolverState step(const SolverState& state, const PerturbationOperator& op,
                 const CorrectionTrajectory& trajectory, double cfl,
                 double max_dt = std::numeric_limits<double>::infinity());
SolverState step(const SolverState& state, const Grid& grid,
                 const GasParameters& params,
                 const CorrectionTrajectory& trajectory, double cfl,
                 double max_dt = std::numeric_limits<double>::infinity());

// Time derivatives of w at nodes up to third order; w_tt from the equation and
// w_ttt from its exact time derivative.
struct StateDerivatives {
  double t = 0.0;
  std::vector<double> w, w_t, w_tt, w_ttt;
  const std::vector<double>& order(int j) const;
};

StateDerivatives evaluate_derivatives(const SolverState& state,
                                      const PerturbationOperator& op,
                                      const CorrectionTrajectory& trajectory);

// Backward-difference estimate of w_ttt from the last three accelerations.
class AccelerationHistory {
 public:
  void push(double t, std::vector<double> w_tt);
  std::size_t size() const { return entries_.size(); }
  // Second-order backward difference on the (possibly nonuniform) last three
  // entries. HistoryTooShort with fewer than three.
  std::vector<double> third_derivative() const;

 private:
  std::vector<std::pair<double, std::vector<double>>> entries_;  // at most 3
};

struct EulerianSnapshot {
  double t = 0.0;
  std::vector<double> x;         // reference nodes
  std::vector<double> position;  // eta(x, t)
  std::vector<double> eta_x;
  std::vector<double> density;   // rho_0(x) / eta_x
  std::vector<double> velocity;  // eta_t
  std::vector<double> barenblatt_density;   // rho_bar(eta_bar(x,t), t)
  std::vector<double> barenblatt_velocity;  // u_bar(eta_bar(x,t), t)
  std::vector<double> density_difference;   // rho - rho_bar
  std::vector<double> velocity_difference;  // w_t + x h_t
  // (rho - rho_bar)/rho_0 = 1/eta_x - 1/eta_bar_x, defined up to the boundary
  std::vector<double> weighted_density_difference;
  double x_minus = 0.0;
  double x_plus = 0.0;
  double eta_x_min = 0.0;

  // Trapezoid quadrature of density * eta_x, that is of rho_0, over the grid.
  double mass(const Grid& grid) const;
};

EulerianSnapshot reconstruct_eulerian(const SolverState& state, const Grid& grid,
                                      const GasParameters& params,
                                      const CorrectionTrajectory& trajectory);

}  // namespace vacuum

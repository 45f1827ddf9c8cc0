#include "vacuum/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vacuum/error.hpp"

namespace vacuum {

Grid build_grid(const BarenblattProfile& profile, int n_cells) {
  if (n_cells < 8 || n_cells % 2 != 0)
    fail(ErrorKind::invalid_grid,
         "n_cells must be even and >= 8, got " + std::to_string(n_cells));
  if (!(profile.L > 0.0) || !(profile.A > 0.0))
    fail(ErrorKind::invalid_grid, "profile has no positive half-width");
  Grid g;
  g.n_cells = n_cells;
  g.half_width = profile.L;
  g.dx = 2.0 * profile.L / n_cells;
  const int half = n_cells / 2;
  g.nodes.resize(n_cells + 1);
  g.sigma_nodes.resize(n_cells + 1);
  g.midpoints.resize(n_cells);
  g.sigma_mid.resize(n_cells);
  // Offsets from the centre are integer multiples of dx, so x_{N-i} = -x_i exactly.
  for (int i = 0; i <= n_cells; ++i) g.nodes[i] = (i - half) * g.dx;
  g.nodes.front() = -profile.L;
  g.nodes.back() = profile.L;
  for (int i = 0; i <= n_cells; ++i) {
    const double x = g.nodes[i];
    g.sigma_nodes[i] = std::max(0.0, profile.A - profile.B * x * x);
  }
  g.sigma_nodes.front() = 0.0;
  g.sigma_nodes.back() = 0.0;
  for (int i = 0; i < n_cells; ++i) {
    const double x = (i + 0.5 - half) * g.dx;
    g.midpoints[i] = x;
    g.sigma_mid[i] = profile.A - profile.B * x * x;
  }
  g.sigma_slope_left = 2.0 * profile.B * profile.L;
  g.sigma_slope_right = -2.0 * profile.B * profile.L;
  return g;
}

std::vector<double> node_derivative(const Grid& grid, std::span<const double> f) {
  const std::size_t n = grid.size();
  std::vector<double> d(n);
  const double inv2 = 0.5 / grid.dx;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) * inv2;
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
  return d;
}

std::vector<double> midpoint_derivative(const Grid& grid, std::span<const double> f) {
  std::vector<double> d(grid.n_cells);
  for (int i = 0; i < grid.n_cells; ++i) d[i] = (f[i + 1] - f[i]) / grid.dx;
  return d;
}

InitialPreset parse_preset(std::string_view name) {
  if (name == "dilation") return InitialPreset::dilation;
  if (name == "bump") return InitialPreset::bump;
  if (name == "kick") return InitialPreset::kick;
  fail(ErrorKind::unknown_preset, "unknown initial-data preset '" + std::string(name) + "'");
}

std::string_view to_string(InitialPreset preset) {
  switch (preset) {
    case InitialPreset::dilation: return "dilation";
    case InitialPreset::bump: return "bump";
    case InitialPreset::kick: return "kick";
  }
  return "?";
}

SolverState initial_data(const Grid& grid, const BarenblattProfile& profile,
                         InitialPreset preset, double amplitude) {
  SolverState s;
  const std::size_t n = grid.size();
  s.w.assign(n, 0.0);
  s.w_t.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.nodes[i];
    switch (preset) {
      case InitialPreset::dilation: s.w[i] = amplitude * x; break;
      case InitialPreset::bump: s.w[i] = amplitude * x * grid.sigma_nodes[i] / profile.A; break;
      case InitialPreset::kick: s.w_t[i] = amplitude * x; break;
    }
  }
  return s;
}

SolverState initial_data(const Grid& grid, const BarenblattProfile& profile,
                         std::string_view preset, double amplitude) {
  return initial_data(grid, profile, parse_preset(preset), amplitude);
}

double stress_increment(double eta_x, double s, double gamma) {
  return std::expm1(-gamma * std::log1p(s / eta_x)) * std::pow(eta_x, -gamma);
}

namespace {

// d/dt of G(s) = (e+s)^{-gamma} - e^{-gamma} for e(t), s(t).
double stress_increment_rate(double e, double e_rate, double s, double s_rate,
                             double gamma) {
  const double ratio = s / e;
  // (e+s)^{-gamma-1} - e^{-gamma-1}
  const double diff = std::expm1(-(gamma + 1.0) * std::log1p(ratio)) * std::pow(e, -gamma - 1.0);
  const double full = std::pow(e + s, -gamma - 1.0);
  return -gamma * diff * e_rate - gamma * full * s_rate;
}

}  // namespace

PerturbationOperator::PerturbationOperator(const Grid& grid, const GasParameters& params)
    : grid_(&grid), params_(params) {
  const double alpha = params.alpha();
  flux_weight_.resize(grid.n_cells);
  for (int i = 0; i < grid.n_cells; ++i)
    flux_weight_[i] = std::pow(grid.sigma_mid[i], alpha + 1.0);
  inv_density_.assign(grid.size(), 0.0);
  for (std::size_t i = 1; i + 1 < grid.size(); ++i)
    inv_density_[i] = std::pow(grid.sigma_nodes[i], -alpha);
  flux_.resize(grid.n_cells);
}

void PerturbationOperator::acceleration(double t, double eta_x,
                                        std::span<const double> w,
                                        std::span<const double> w_t,
                                        std::span<double> out) const {
  const Grid& g = *grid_;
  const std::size_t n = g.size();
  const double gamma = params_.gamma;
  const double damping = params_.damping(t);
  const double threshold = kMapDegeneracyRatio * eta_x;
  const double inv_dx = 1.0 / g.dx;

  for (int i = 0; i < g.n_cells; ++i) {
    const double s = (w[i + 1] - w[i]) * inv_dx;
    if (!(eta_x + s > threshold))
      throw MapDegenerate(t, eta_x + s, "midpoint " + std::to_string(i));
    flux_[i] = flux_weight_[i] * stress_increment(eta_x, s, gamma);
  }
  for (std::size_t i = 1; i + 1 < n; ++i)
    out[i] = -damping * w_t[i] -
             inv_density_[i] * (flux_[i] - flux_[i - 1]) * inv_dx / gamma;

  const double alpha = params_.alpha();
  const double half_inv = 0.5 * inv_dx;
  const double s_left = (-3.0 * w[0] + 4.0 * w[1] - w[2]) * half_inv;
  const double s_right = (3.0 * w[n - 1] - 4.0 * w[n - 2] + w[n - 3]) * half_inv;
  if (!(eta_x + s_left > threshold)) throw MapDegenerate(t, eta_x + s_left, "left boundary");
  if (!(eta_x + s_right > threshold)) throw MapDegenerate(t, eta_x + s_right, "right boundary");
  out[0] = -damping * w_t[0] - alpha * g.sigma_slope_left * stress_increment(eta_x, s_left, gamma);
  out[n - 1] = -damping * w_t[n - 1] -
               alpha * g.sigma_slope_right * stress_increment(eta_x, s_right, gamma);
}

void PerturbationOperator::acceleration_rate(double t, double eta_x, double eta_x_rate,
                                             std::span<const double> w,
                                             std::span<const double> w_t,
                                             std::span<const double> w_tt,
                                             std::span<double> out) const {
  const Grid& g = *grid_;
  const std::size_t n = g.size();
  const double gamma = params_.gamma;
  const double damping = params_.damping(t);
  const double damping_rate = -params_.lambda * damping / (1.0 + t);
  const double inv_dx = 1.0 / g.dx;

  for (int i = 0; i < g.n_cells; ++i) {
    const double s = (w[i + 1] - w[i]) * inv_dx;
    const double s_rate = (w_t[i + 1] - w_t[i]) * inv_dx;
    flux_[i] = flux_weight_[i] * stress_increment_rate(eta_x, eta_x_rate, s, s_rate, gamma);
  }
  for (std::size_t i = 1; i + 1 < n; ++i)
    out[i] = -damping_rate * w_t[i] - damping * w_tt[i] -
             inv_density_[i] * (flux_[i] - flux_[i - 1]) * inv_dx / gamma;

  const double alpha = params_.alpha();
  const double half_inv = 0.5 * inv_dx;
  const auto left = [&](std::span<const double> f) {
    return (-3.0 * f[0] + 4.0 * f[1] - f[2]) * half_inv;
  };
  const auto right = [&](std::span<const double> f) {
    return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * half_inv;
  };
  out[0] = -damping_rate * w_t[0] - damping * w_tt[0] -
           alpha * g.sigma_slope_left *
               stress_increment_rate(eta_x, eta_x_rate, left(w), left(w_t), gamma);
  out[n - 1] = -damping_rate * w_t[n - 1] - damping * w_tt[n - 1] -
               alpha * g.sigma_slope_right *
                   stress_increment_rate(eta_x, eta_x_rate, right(w), right(w_t), gamma);
}

double PerturbationOperator::stable_time_step(double t, double eta_x,
                                              std::span<const double> w,
                                              double cfl) const {
  const Grid& g = *grid_;
  double c2_max = 0.0;
  for (int i = 0; i < g.n_cells; ++i) {
    const double stretch = eta_x + (w[i + 1] - w[i]) / g.dx;
    c2_max = std::max(c2_max, g.sigma_mid[i] * std::pow(stretch, -params_.gamma - 1.0));
  }
  const double wave = cfl * g.dx / std::sqrt(c2_max);
  const double damping_cap = 0.5 / params_.damping(t);
  return std::min(wave, damping_cap);
}

double PerturbationOperator::min_stretch(double eta_x, std::span<const double> w) const {
  const Grid& g = *grid_;
  const std::size_t n = g.size();
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.n_cells; ++i) m = std::min(m, eta_x + (w[i + 1] - w[i]) / g.dx);
  const double half_inv = 0.5 / g.dx;
  m = std::min(m, eta_x + (-3.0 * w[0] + 4.0 * w[1] - w[2]) * half_inv);
  m = std::min(m, eta_x + (3.0 * w[n - 1] - 4.0 * w[n - 2] + w[n - 3]) * half_inv);
  return m;
}

std::vector<double> rhs_acceleration(const SolverState& state, const Grid& grid,
                                     const GasParameters& params,
                                     const AnsatzEvaluation& ansatz) {
  PerturbationOperator op(grid, params);
  std::vector<double> out(grid.size());
  op.acceleration(state.t, ansatz.eta_x, state.w, state.w_t, out);
  return out;
}

SolverState step(const SolverState& state, const PerturbationOperator& op,
                 const CorrectionTrajectory& trajectory, double cfl, double max_dt) {
  if (!(cfl > 0.0 && cfl <= 1.0))
    fail(ErrorKind::invalid_parameters, "cfl must lie in (0, 1]");
  const double t = state.t;
  const double eta0 = ansatz_derivatives(trajectory, t, 0).eta_x;
  const double dt_cfl = op.stable_time_step(t, eta0, state.w, cfl);
  if (!(dt_cfl >= 1e-14))
    fail(ErrorKind::cfl_underflow, "time step " + std::to_string(dt_cfl) +
                                       " underflowed at t=" + std::to_string(t));
  const double dt = std::min(dt_cfl, max_dt);
  const double eta_half = ansatz_derivatives(trajectory, t + 0.5 * dt, 0).eta_x;
  const double eta1 = ansatz_derivatives(trajectory, t + dt, 0).eta_x;

  const std::size_t n = state.w.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), w(n), v(n);
  op.acceleration(t, eta0, state.w, state.w_t, k1);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = state.w[i] + 0.5 * dt * state.w_t[i];
    v[i] = state.w_t[i] + 0.5 * dt * k1[i];
  }
  op.acceleration(t + 0.5 * dt, eta_half, w, v, k2);
  std::vector<double> v2 = v;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = state.w[i] + 0.5 * dt * v2[i];
    v[i] = state.w_t[i] + 0.5 * dt * k2[i];
  }
  op.acceleration(t + 0.5 * dt, eta_half, w, v, k3);
  std::vector<double> v3 = v;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = state.w[i] + dt * v3[i];
    v[i] = state.w_t[i] + dt * k3[i];
  }
  op.acceleration(t + dt, eta1, w, v, k4);

  SolverState next;
  next.t = t + dt;
  next.step_count = state.step_count + 1;
  next.dt_current = dt;
  next.w.resize(n);
  next.w_t.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    next.w[i] = state.w[i] + dt / 6.0 * (state.w_t[i] + 2.0 * v2[i] + 2.0 * v3[i] + v[i]);
    next.w_t[i] = state.w_t[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return next;
}

SolverState step(const SolverState& state, const Grid& grid, const GasParameters& params,
                 const CorrectionTrajectory& trajectory, double cfl, double max_dt) {
  PerturbationOperator op(grid, params);
  return step(state, op, trajectory, cfl, max_dt);
}

const std::vector<double>& StateDerivatives::order(int j) const {
  switch (j) {
    case 0: return w;
    case 1: return w_t;
    case 2: return w_tt;
    case 3: return w_ttt;
    default: fail(ErrorKind::invalid_parameters, "time-derivative order must be <= 3");
  }
}

StateDerivatives evaluate_derivatives(const SolverState& state,
                                      const PerturbationOperator& op,
                                      const CorrectionTrajectory& trajectory) {
  const AnsatzEvaluation ansatz = ansatz_derivatives(trajectory, state.t, 1);
  StateDerivatives d;
  d.t = state.t;
  d.w = state.w;
  d.w_t = state.w_t;
  d.w_tt.resize(state.w.size());
  d.w_ttt.resize(state.w.size());
  op.acceleration(state.t, ansatz.eta_x, d.w, d.w_t, d.w_tt);
  op.acceleration_rate(state.t, ansatz.eta_x, ansatz.rate(), d.w, d.w_t, d.w_tt, d.w_ttt);
  return d;
}

void AccelerationHistory::push(double t, std::vector<double> w_tt) {
  entries_.emplace_back(t, std::move(w_tt));
  if (entries_.size() > 3) entries_.erase(entries_.begin());
}

std::vector<double> AccelerationHistory::third_derivative() const {
  if (entries_.size() < 3)
    fail(ErrorKind::history_too_short,
         "third time derivative needs 3 stored accelerations, have " +
             std::to_string(entries_.size()));
  const auto& [t0, a0] = entries_[0];
  const auto& [t1, a1] = entries_[1];
  const auto& [t2, a2] = entries_[2];
  // Derivative at t2 of the quadratic through the three points.
  const double h1 = t1 - t0;
  const double h2 = t2 - t1;
  const double c2 = (2.0 * h2 + h1) / (h2 * (h1 + h2));
  const double c1 = -(h1 + h2) / (h1 * h2);
  const double c0 = h2 / (h1 * (h1 + h2));
  std::vector<double> d(a2.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = c2 * a2[i] + c1 * a1[i] + c0 * a0[i];
  return d;
}

double EulerianSnapshot::mass(const Grid& grid) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double weight = (i == 0 || i + 1 == x.size()) ? 0.5 : 1.0;
    sum += weight * density[i] * eta_x[i];
  }
  return sum * grid.dx;
}

EulerianSnapshot reconstruct_eulerian(const SolverState& state, const Grid& grid,
                                      const GasParameters& params,
                                      const CorrectionTrajectory& trajectory) {
  const AnsatzEvaluation ansatz = ansatz_derivatives(trajectory, state.t, 1);
  const CorrectionState corr = trajectory.at(state.t);
  const double eta_bar_x = reference_stretch(params, state.t);
  const double eta_bar_rate = reference_stretch_rate(params, state.t);
  const double alpha = params.alpha();
  const std::size_t n = grid.size();

  EulerianSnapshot snap;
  snap.t = state.t;
  snap.x = grid.nodes;
  const std::vector<double> w_x = node_derivative(grid, state.w);
  snap.position.resize(n);
  snap.eta_x.resize(n);
  snap.density.resize(n);
  snap.velocity.resize(n);
  snap.barenblatt_density.resize(n);
  snap.barenblatt_velocity.resize(n);
  snap.density_difference.resize(n);
  snap.velocity_difference.resize(n);
  snap.weighted_density_difference.resize(n);
  snap.eta_x_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.nodes[i];
    const double rho0 = std::pow(grid.sigma_nodes[i], alpha);
    const double stretch = ansatz.eta_x + w_x[i];
    if (!(stretch > kMapDegeneracyRatio * ansatz.eta_x))
      throw MapDegenerate(state.t, stretch, "reconstruction node " + std::to_string(i));
    snap.eta_x_min = std::min(snap.eta_x_min, stretch);
    snap.position[i] = x * ansatz.eta_x + state.w[i];
    snap.eta_x[i] = stretch;
    snap.density[i] = rho0 / stretch;
    snap.velocity[i] = x * ansatz.rate() + state.w_t[i];
    snap.barenblatt_density[i] = rho0 / eta_bar_x;
    snap.barenblatt_velocity[i] = x * eta_bar_rate;
    snap.weighted_density_difference[i] = 1.0 / stretch - 1.0 / eta_bar_x;
    snap.density_difference[i] = rho0 * snap.weighted_density_difference[i];
    snap.velocity_difference[i] = state.w_t[i] + x * corr.z;
  }
  snap.x_minus = snap.position.front();
  snap.x_plus = snap.position.back();
  return snap;
}

}  // namespace vacuum

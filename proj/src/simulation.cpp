#include "vacuum/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vacuum/error.hpp"

namespace vacuum {

namespace {

// Remaining intervals shorter than this fraction of (1+t) are absorbed into
// the sample time instead of taking a sliver step.
constexpr double kScheduleSnap = 1e-12;

void check_config(const SimulationConfig& c) {
  validate(c.params);
  if (!(c.t_end > 0.0) || !std::isfinite(c.t_end))
    fail(ErrorKind::invalid_parameters, "t_end must be positive and finite");
  if (c.samples < 1) fail(ErrorKind::invalid_parameters, "samples must be at least 1");
  if (c.snapshots < 0) fail(ErrorKind::invalid_parameters, "snapshots must be >= 0");
  if (!std::isfinite(c.amplitude))
    fail(ErrorKind::invalid_parameters, "amplitude must be finite");
  if (!(c.ode_tol > 0.0)) fail(ErrorKind::invalid_parameters, "ode_tol must be positive");
  if (!(c.max_dt > 0.0)) fail(ErrorKind::invalid_parameters, "max_dt must be positive");
  if (c.energy.j_max < 0 || c.energy.j_max > 2 || c.energy.i_max < 0 || c.energy.i_max > 2)
    fail(ErrorKind::invalid_parameters, "energy orders are limited to j_max, i_max <= 2");
}

std::set<int> snapshot_indices(int samples, int count) {
  std::set<int> out;
  if (count <= 0) return out;
  if (count == 1) return {samples};
  for (int i = 0; i < count; ++i)
    out.insert(static_cast<int>(std::lround(double(i) * samples / (count - 1))));
  return out;
}

double max_abs(std::span<const double> f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

// Trapezoid-weighted discrete L2 norm.
double grid_l2(std::span<const double> f, double dx) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double weight = (i == 0 || i + 1 == f.size()) ? 0.5 : 1.0;
    s += weight * f[i] * f[i];
  }
  return std::sqrt(s * dx);
}

}  // namespace

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::map_degenerate: return "map_degenerate";
    case RunStatus::cfl_underflow: return "cfl_underflow";
  }
  return "unknown";
}

std::vector<double> log_schedule(double t_end, int samples) {
  std::vector<double> t(samples + 1);
  const double span = std::log1p(t_end);
  for (int k = 0; k <= samples; ++k) t[k] = std::expm1(span * k / samples);
  t.front() = 0.0;
  t.back() = t_end;
  return t;
}

SimulationResult run_simulation(const SimulationConfig& config,
                                const CorrectionTrajectory* trajectory) {
  check_config(config);
  const GasParameters& params = config.params;

  SimulationResult result;
  result.config = config;
  result.profile = derive_profile(params, config.mass);
  const Grid grid = build_grid(result.profile, config.n_cells);
  result.nodes = grid.nodes;

  std::optional<CorrectionTrajectory> owned;
  if (!trajectory) {
    owned.emplace(config.frozen_correction
                      ? CorrectionTrajectory::frozen(params, config.t_end)
                      : CorrectionTrajectory::integrate(params, config.t_end, config.ode_tol));
    trajectory = &*owned;
  }
  if (trajectory->t_end() < config.t_end)
    fail(ErrorKind::invalid_parameters, "correction trajectory ends before t_end");
  const CorrectionTrajectory& traj = *trajectory;

  const PerturbationOperator op(grid, params);
  SolverState state = initial_data(grid, result.profile, config.preset, config.amplitude);
  AccelerationHistory history;
  const auto push_history = [&] {
    if (!config.energy.use_j3_fd) return;
    std::vector<double> a(state.w.size());
    op.acceleration(state.t, ansatz_derivatives(traj, state.t, 0).eta_x, state.w, state.w_t, a);
    history.push(state.t, std::move(a));
  };

  const std::vector<double> times = log_schedule(config.t_end, config.samples);
  const std::set<int> snap_at = snapshot_indices(config.samples, config.snapshots);
  const double L = result.profile.L;

  const auto record = [&](int k) {
    StateDerivatives d = evaluate_derivatives(state, op, traj);
    if (config.energy.use_j3_fd) {
      if (history.size() >= 3)
        d.w_ttt = history.third_derivative();
      else
        std::fill(d.w_ttt.begin(), d.w_ttt.end(), std::numeric_limits<double>::quiet_NaN());
    }
    EulerianSnapshot snap = reconstruct_eulerian(state, grid, params, traj);
    const AnsatzEvaluation ansatz = ansatz_derivatives(traj, state.t, 3);

    SampleRecord rec;
    rec.t = state.t;
    rec.dt = state.dt_current;
    rec.step = state.step_count;
    rec.h = traj.at(state.t).h;
    rec.eta_tilde_x = ansatz.eta_x;
    rec.energy = energy_report(d, snap, grid, params, config.energy);
    rec.sup_density_difference = max_abs(snap.weighted_density_difference);
    rec.sup_velocity_difference = max_abs(snap.velocity_difference);
    rec.boundary[0] = snap.x_plus;
    for (int j = 1; j <= 3; ++j) rec.boundary[j] = L * ansatz.derivative(j) + d.order(j).back();
    result.samples.push_back(std::move(rec));
    if (snap_at.count(k)) result.snapshots.push_back({std::move(snap), state.w, state.w_t});
  };

  try {
    push_history();
    record(0);
    for (int k = 1; k <= config.samples; ++k) {
      const double target = times[k];
      while (true) {
        const double remaining = target - state.t;
        if (remaining <= kScheduleSnap * (1.0 + target)) {
          state.t = target;
          break;
        }
        state = step(state, op, traj, config.cfl, std::min(config.max_dt, remaining));
        push_history();
      }
      record(k);
    }
    result.terminal_time = state.t;
  } catch (const MapDegenerate& e) {
    result.status = RunStatus::map_degenerate;
    result.terminal_time = e.time();
    result.terminal_eta_x_min = e.eta_x_min();
    result.terminal_message = e.what();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::cfl_underflow) throw;
    result.status = RunStatus::cfl_underflow;
    result.terminal_time = state.t;
    result.terminal_eta_x_min =
        op.min_stretch(ansatz_derivatives(traj, state.t, 0).eta_x, state.w);
    result.terminal_message = e.what();
  }
  result.final_state = std::move(state);
  return result;
}

RefinementReport richardson_orders(std::vector<RefinementLevel> levels, double t_probe) {
  if (levels.size() < 3)
    fail(ErrorKind::invalid_grid, "Richardson orders need at least three grids");
  std::sort(levels.begin(), levels.end(),
            [](const auto& a, const auto& b) { return a.n_cells < b.n_cells; });
  const int ratio = levels[1].n_cells / levels[0].n_cells;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i > 0 && (ratio < 2 || levels[i].n_cells != ratio * levels[i - 1].n_cells))
      fail(ErrorKind::invalid_grid, "grids must be refined by a constant integer ratio");
    if (levels[i].w.size() != static_cast<std::size_t>(levels[i].n_cells + 1))
      fail(ErrorKind::invalid_grid, "level data does not match its cell count");
  }

  // Difference of levels a and a+1 on the nodes of level `base`.
  const auto difference = [&](std::size_t base, std::size_t a) {
    const int n = levels[base].n_cells;
    int stride_a = 1;
    for (std::size_t i = base; i < a; ++i) stride_a *= ratio;
    const int stride_b = stride_a * ratio;
    std::vector<double> e(n + 1);
    for (int j = 0; j <= n; ++j)
      e[j] = levels[a].w[j * stride_a] - levels[a + 1].w[j * stride_b];
    return e;
  };

  RefinementReport report;
  report.t_probe = t_probe;
  const double half_width = levels[0].x.empty() ? 1.0 : levels[0].x.back();
  report.monotone = true;
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a + 1 < levels.size(); ++a) {
    const double e = grid_l2(difference(a, a), 2.0 * half_width / levels[a].n_cells);
    if (!(e < previous)) report.monotone = false;
    previous = e;
  }

  report.min_order_l2 = std::numeric_limits<double>::infinity();
  report.min_order_max = std::numeric_limits<double>::infinity();
  const double log_r = std::log(double(ratio));
  for (std::size_t i = 0; i + 2 < levels.size(); ++i) {
    const double dx = 2.0 * half_width / levels[i].n_cells;
    const std::vector<double> coarse = difference(i, i);
    const std::vector<double> fine = difference(i, i + 1);
    RefinementOrder o;
    o.n_coarse = levels[i].n_cells;
    o.diff_l2_coarse = grid_l2(coarse, dx);
    o.diff_l2_fine = grid_l2(difference(i + 1, i + 1), dx / ratio);
    o.diff_max_coarse = max_abs(coarse);
    o.diff_max_fine = max_abs(fine);
    o.order_l2 = std::log(o.diff_l2_coarse / o.diff_l2_fine) / log_r;
    o.order_max = std::log(o.diff_max_coarse / o.diff_max_fine) / log_r;
    report.min_order_l2 = std::min(report.min_order_l2, o.order_l2);
    report.min_order_max = std::min(report.min_order_max, o.order_max);
    report.orders.push_back(o);
  }
  report.levels = std::move(levels);
  return report;
}

RefinementReport refine(const SimulationConfig& config, std::span<const int> n_list,
                        double t_probe) {
  SimulationConfig base = config;
  base.t_end = t_probe;
  base.samples = 1;
  base.snapshots = 0;
  check_config(base);
  const CorrectionTrajectory traj =
      base.frozen_correction ? CorrectionTrajectory::frozen(base.params, t_probe)
                             : CorrectionTrajectory::integrate(base.params, t_probe, base.ode_tol);
  std::vector<RefinementLevel> levels;
  for (int n : n_list) {
    SimulationConfig c = base;
    c.n_cells = n;
    SimulationResult r = run_simulation(c, &traj);
    if (!r.completed())
      fail(ErrorKind::map_degenerate, "refinement run on " + std::to_string(n) +
                                          " cells stopped: " + r.terminal_message);
    levels.push_back({n, r.nodes, r.final_state.w, r.final_state.step_count});
  }
  return richardson_orders(std::move(levels), t_probe);
}

}  // namespace vacuum

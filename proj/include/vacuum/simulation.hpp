#pragma once

#include <array>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vacuum/barenblatt.hpp"
#include "vacuum/correction.hpp"
#include "vacuum/gas_parameters.hpp"
#include "vacuum/metrics.hpp"
#include "vacuum/solver.hpp"

namespace vacuum {

struct SimulationConfig {
  GasParameters params;
  double mass = 1.0;
  int n_cells = 400;
  double cfl = 0.5;
  double t_end = 1000.0;
  std::string preset = "bump";
  double amplitude = 1e-2;
  double ode_tol = 1e-11;
  // Samples at t_k = (1+t_end)^{k/samples} - 1, k = 0..samples.
  int samples = 120;
  // Eulerian snapshots at this many evenly chosen sample indices (first and
  // last included); 0 disables them.
  int snapshots = 5;
  double max_dt = std::numeric_limits<double>::infinity();
  // Use h = 0 instead of the integrated correction.
  bool frozen_correction = false;
  EnergyConfig energy;

  bool operator==(const SimulationConfig&) const = default;
};

// Log-spaced sample times including 0 and t_end.
std::vector<double> log_schedule(double t_end, int samples);

struct SampleRecord {
  double t = 0.0;
  double dt = 0.0;  // last step size taken
  long step = 0;
  double h = 0.0;
  double eta_tilde_x = 0.0;
  EnergyReport energy;
  double sup_density_difference = 0.0;   // max |rho - rho_bar| / rho_0
  double sup_velocity_difference = 0.0;  // max |u - u_bar|
  // x_plus and d^k x_plus / dt^k = L d^k eta_tilde_x + d_t^k w(L), k = 1..3
  std::array<double, 4> boundary{};
};

struct Snapshot {
  EulerianSnapshot eulerian;
  std::vector<double> w, w_t;
};

enum class RunStatus { completed, map_degenerate, cfl_underflow };
const char* to_string(RunStatus status);

struct SimulationResult {
  SimulationConfig config;
  BarenblattProfile profile;
  RunStatus status = RunStatus::completed;
  double terminal_time = 0.0;      // time of the terminal event, or t_end
  double terminal_eta_x_min = 0.0;
  std::string terminal_message;
  std::vector<SampleRecord> samples;
  std::vector<Snapshot> snapshots;
  SolverState final_state;
  std::vector<double> nodes;

  bool completed() const { return status == RunStatus::completed; }
};

// Runs the solver through the log schedule. Map degeneracy and CFL underflow
// end the run early and are recorded in the result instead of thrown. Pass a
// trajectory to reuse an existing correction integration; it must cover t_end.
SimulationResult run_simulation(const SimulationConfig& config,
                                const CorrectionTrajectory* trajectory = nullptr);

// Solution sampled at a fixed probe time on one grid.
struct RefinementLevel {
  int n_cells = 0;
  std::vector<double> x;
  std::vector<double> w;
  long steps = 0;
};

// Observed orders log(e_coarse/e_fine)/log(r) of one triplet. The L2 pair
// measures each difference of successive levels on the coarser grid of that
// pair; the max pair compares both differences on the triplet's coarsest
// nodes, which tracks pointwise (boundary node) convergence.
struct RefinementOrder {
  int n_coarse = 0;
  double diff_l2_coarse = 0.0;
  double diff_l2_fine = 0.0;
  double order_l2 = 0.0;
  double diff_max_coarse = 0.0;
  double diff_max_fine = 0.0;
  double order_max = 0.0;
};

struct RefinementReport {
  double t_probe = 0.0;
  std::vector<RefinementLevel> levels;
  std::vector<RefinementOrder> orders;
  // Differences between successive levels shrink at every refinement.
  bool monotone = false;
  double min_order_l2 = 0.0;
  double min_order_max = 0.0;
};

// Orders from precomputed levels. Cell counts must grow by one constant
// integer ratio so that coarse nodes are shared (InvalidGrid otherwise).
RefinementReport richardson_orders(std::vector<RefinementLevel> levels, double t_probe);

// Runs the configuration to t_probe on every grid in n_list.
RefinementReport refine(const SimulationConfig& config, std::span<const int> n_list,
                        double t_probe);

}  // namespace vacuum

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "vacuum/gas_parameters.hpp"

namespace vacuum {

// One accepted point of the correction ODE
//   h'' + mu/(1+t)^lambda h' - mu b (eta_bar_x + h)^{-gamma} + eta_bar_x'' + mu/(1+t)^lambda eta_bar_x' = 0
// with h(0) = h'(0) = 0 and b = (lambda+1)/(gamma+1).
struct CorrectionState {
  double t = 0.0;
  double h = 0.0;
  double z = 0.0;    // h_t
  double z_t = 0.0;  // h_tt, from the ODE
};

// eta_bar_x(t) = (1+t)^b and its first two time derivatives.
double reference_stretch(const GasParameters& params, double t);
double reference_stretch_rate(const GasParameters& params, double t);
double reference_stretch_accel(const GasParameters& params, double t);

// Right-hand side (h_t, z_t) of the first-order system.
std::array<double, 2> correction_rhs(const GasParameters& params, double t,
                                     double h, double z);

// Completed, immutable integration of the correction ODE with cubic Hermite
// dense output on (h, z). z_t at interior times is recomputed from the ODE.
class CorrectionTrajectory {
 public:
  // Adaptive Dormand-Prince 5(4) integration over [0, t_end].
  static CorrectionTrajectory integrate(const GasParameters& params,
                                        double t_end, double tol = 1e-11);
  // h identically zero: the uncorrected Barenblatt ansatz (test mode).
  static CorrectionTrajectory frozen(const GasParameters& params, double t_end);

  const GasParameters& params() const { return params_; }
  std::span<const CorrectionState> nodes() const { return nodes_; }
  double t_end() const { return nodes_.back().t; }
  bool is_frozen() const { return frozen_; }
  double tol() const { return tol_; }

  // Dense output; DomainError outside [0, t_end].
  CorrectionState at(double t) const;

  // Largest h over the accepted steps.
  double h_max() const;

 private:
  CorrectionTrajectory(GasParameters params, std::vector<CorrectionState> nodes,
                       bool frozen, double tol)
      : params_(params), nodes_(std::move(nodes)), frozen_(frozen), tol_(tol) {}

  GasParameters params_;
  std::vector<CorrectionState> nodes_;
  bool frozen_ = false;
  double tol_ = 0.0;
};

// eta_tilde_x(t) = (1+t)^b + h(t) and d^k/dt^k of it for k = 1..k_max.
struct AnsatzEvaluation {
  double t = 0.0;
  double eta_x = 1.0;
  // derivatives[k-1] = d^k eta_tilde_x / dt^k
  std::vector<double> derivatives;

  double rate() const { return derivatives.empty() ? 0.0 : derivatives[0]; }
  double derivative(int k) const { return k == 0 ? eta_x : derivatives.at(k - 1); }
};

inline constexpr int kMaxAnsatzOrder = 4;

// k = 1 from z + eta_bar_x'; k >= 2 by differentiating
//   eta'' + mu/(1+t)^lambda eta' - mu b eta^{-gamma} = 0
// analytically and substituting lower derivatives. In frozen mode the
// derivatives are those of (1+t)^b.
AnsatzEvaluation ansatz_derivatives(const CorrectionTrajectory& trajectory,
                                    double t, int k_max = 3);

// Same recursion from an explicit (t, eta_x, eta_x') pair.
AnsatzEvaluation ansatz_from_state(const GasParameters& params, double t,
                                   double eta_x, double eta_x_rate, int k_max);

struct PhasePlaneReport {
  bool found = false;
  std::string reason;
  double t0 = 0.0;  // z at its positive maximum
  double t1 = 0.0;  // z = 0, h at its maximum
  double t2 = 0.0;  // z at its negative minimum
  // [0,t0]: z up, h up; [t0,t1]: z down, h up; [t1,t2]: z down, h down;
  // [t2,end]: z up, h down.
  std::array<bool, 4> interval_pass{};
  bool all_intervals_pass() const;
};

// Locates t0 < t1 < t2 on the accepted steps and checks monotonicity on each
// interval. A missing pattern is reported through found=false; a trajectory
// whose times are not increasing throws PatternNotFound.
PhasePlaneReport phase_plane_check(std::span<const CorrectionState> trajectory);

struct DecayRow {
  int k = 0;
  double predicted_exponent = 0.0;
  bool log_branch = false;
  // k equals mu + 2/(gamma+1) exactly (lambda = 1 only)
  bool boundary_case = false;
  double fitted_exponent = 0.0;
  double fit_r2 = 0.0;
  // sup over samples of |d^k eta_x| / envelope, and the same sup restricted
  // to t <= t_end/100 (to measure drift over the final two decades)
  double sup_ratio = 0.0;
  double sup_ratio_early = 0.0;
  // For k = 0: min of eta_x/(1+t)^b (the envelope's lower side)
  double inf_ratio = 0.0;
};

struct DecayReport {
  double fit_t_lo = 0.0;
  double fit_t_hi = 0.0;
  std::vector<DecayRow> rows;  // k = 0..k_max
  const DecayRow& row(int k) const { return rows.at(k); }
};

// Envelope (1+t)^{b-k}, or (1+t)^{-mu} ln(1+t) on the lambda = 1 log branch.
// For k >= 1 the envelope ratios are taken over t >= e-1, where the log factor
// is at least 1; the k = 0 ratio eta_x/(1+t)^b uses every sample.
// Fits use [fit_t_lo, fit_t_hi]; if fit_t_lo <= 0 the last decade is used.
DecayReport verify_decay_rates(const CorrectionTrajectory& trajectory,
                               int k_max = 3, double fit_t_lo = 0.0,
                               double fit_t_hi = 0.0, int samples = 600);

}  // namespace vacuum

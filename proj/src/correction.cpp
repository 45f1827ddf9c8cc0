#include "vacuum/correction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vacuum/error.hpp"
#include "vacuum/ode_integrator.hpp"
#include "vacuum/rates.hpp"

namespace vacuum {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// l-th derivative of mu (1+t)^{-lambda}.
double damping_derivative(const GasParameters& p, double t, int l) {
  double coeff = p.mu;
  for (int i = 0; i < l; ++i) coeff *= -p.lambda - i;
  return coeff * std::pow(1.0 + t, -p.lambda - l);
}

// k-th derivative of (1+t)^b.
double power_derivative(double b, double t, int k) {
  double coeff = 1.0;
  for (int i = 0; i < k; ++i) coeff *= b - i;
  return coeff * std::pow(1.0 + t, b - k);
}

double hermite(double t0, double t1, double y0, double dy0, double y1,
               double dy1, double t) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * dy0 +
         (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * dy1;
}

}  // namespace

double reference_stretch(const GasParameters& p, double t) {
  return std::pow(1.0 + t, p.expansion_exponent());
}

double reference_stretch_rate(const GasParameters& p, double t) {
  return power_derivative(p.expansion_exponent(), t, 1);
}

double reference_stretch_accel(const GasParameters& p, double t) {
  return power_derivative(p.expansion_exponent(), t, 2);
}

std::array<double, 2> correction_rhs(const GasParameters& p, double t, double h,
                                     double z) {
  const double b = p.expansion_exponent();
  const double eta_bar = reference_stretch(p, t);
  const double restoring =
      p.mu * b * (std::pow(eta_bar, -p.gamma) - std::pow(eta_bar + h, -p.gamma));
  return {z, -p.damping(t) * z - restoring - reference_stretch_accel(p, t)};
}

CorrectionTrajectory CorrectionTrajectory::integrate(const GasParameters& params,
                                                     double t_end, double tol) {
  validate(params);
  if (!(t_end > 0.0)) fail(ErrorKind::invalid_parameters, "t_end must be positive");
  if (!(tol > 0.0)) fail(ErrorKind::invalid_parameters, "tol must be positive");
  OdeOptions opt;
  opt.tol = tol;
  opt.initial_step = std::min(1e-3, t_end);
  const auto rhs = [&params](double t, const OdeVector<2>& y) {
    return correction_rhs(params, t, y[0], y[1]);
  };
  const auto samples = integrate_dopri5<2>(rhs, 0.0, {0.0, 0.0}, t_end, opt);
  std::vector<CorrectionState> nodes;
  nodes.reserve(samples.size());
  for (const auto& s : samples) nodes.push_back({s.t, s.y[0], s.y[1], s.dydt[1]});
  return CorrectionTrajectory(params, std::move(nodes), false, tol);
}

CorrectionTrajectory CorrectionTrajectory::frozen(const GasParameters& params,
                                                  double t_end) {
  validate(params);
  if (!(t_end > 0.0)) fail(ErrorKind::invalid_parameters, "t_end must be positive");
  std::vector<CorrectionState> nodes = {{0.0, 0.0, 0.0, 0.0},
                                        {t_end, 0.0, 0.0, 0.0}};
  return CorrectionTrajectory(params, std::move(nodes), true, 0.0);
}

CorrectionState CorrectionTrajectory::at(double t) const {
  const double t_last = nodes_.back().t;
  if (t < 0.0 || t > t_last * (1.0 + 1e-14))
    fail(ErrorKind::domain_error, "trajectory queried at t=" + std::to_string(t) +
                                      " outside [0, " + std::to_string(t_last) + "]");
  if (frozen_) return {t, 0.0, 0.0, 0.0};
  t = std::min(t, t_last);
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                             [](double v, const CorrectionState& s) { return v < s.t; });
  if (it == nodes_.end()) return nodes_.back();
  if (it == nodes_.begin()) return nodes_.front();
  const CorrectionState& a = *(it - 1);
  const CorrectionState& b = *it;
  if (t == a.t) return a;
  CorrectionState s;
  s.t = t;
  s.h = hermite(a.t, b.t, a.h, a.z, b.h, b.z, t);
  s.z = hermite(a.t, b.t, a.z, a.z_t, b.z, b.z_t, t);
  s.z_t = correction_rhs(params_, t, s.h, s.z)[1];
  return s;
}

double CorrectionTrajectory::h_max() const {
  double m = 0.0;
  for (const auto& s : nodes_) m = std::max(m, s.h);
  return m;
}

AnsatzEvaluation ansatz_from_state(const GasParameters& p, double t,
                                   double eta_x, double eta_x_rate, int k_max) {
  if (k_max < 0 || k_max > kMaxAnsatzOrder)
    fail(ErrorKind::invalid_parameters,
         "derivative order must lie in [0, " + std::to_string(kMaxAnsatzOrder) + "]");
  const double c = p.mu * p.expansion_exponent();
  // y[k] = d^k eta_x / dt^k, q[k] = d^k (eta_x^{-gamma}) / dt^k
  std::array<double, kMaxAnsatzOrder + 1> y{};
  std::array<double, kMaxAnsatzOrder + 1> q{};
  y[0] = eta_x;
  y[1] = eta_x_rate;
  q[0] = std::pow(eta_x, -p.gamma);
  for (int k = 0; k + 2 <= k_max; ++k) {
    // q^{(k)} from (eta q)' relation: eta q' = -gamma eta' q, differentiated k-1 times.
    if (k >= 1) {
      const int m = k - 1;
      double acc = 0.0;
      for (int l = 0; l <= m; ++l) acc -= p.gamma * binomial(m, l) * y[l + 1] * q[m - l];
      for (int l = 1; l <= m; ++l) acc -= binomial(m, l) * y[l] * q[m + 1 - l];
      q[k] = acc / y[0];
    }
    double next = c * q[k];
    for (int l = 0; l <= k; ++l)
      next -= binomial(k, l) * damping_derivative(p, t, l) * y[k + 1 - l];
    y[k + 2] = next;
  }
  AnsatzEvaluation e;
  e.t = t;
  e.eta_x = eta_x;
  e.derivatives.assign(y.begin() + 1, y.begin() + 1 + k_max);
  return e;
}

AnsatzEvaluation ansatz_derivatives(const CorrectionTrajectory& trajectory,
                                    double t, int k_max) {
  const GasParameters& p = trajectory.params();
  if (trajectory.is_frozen()) {
    if (k_max < 0 || k_max > kMaxAnsatzOrder)
      fail(ErrorKind::invalid_parameters, "derivative order out of range");
    trajectory.at(t);  // range check
    AnsatzEvaluation e;
    e.t = t;
    e.eta_x = reference_stretch(p, t);
    for (int k = 1; k <= k_max; ++k)
      e.derivatives.push_back(power_derivative(p.expansion_exponent(), t, k));
    return e;
  }
  const CorrectionState s = trajectory.at(t);
  return ansatz_from_state(p, t, reference_stretch(p, t) + s.h,
                           reference_stretch_rate(p, t) + s.z, k_max);
}

bool PhasePlaneReport::all_intervals_pass() const {
  return found && std::all_of(interval_pass.begin(), interval_pass.end(),
                              [](bool b) { return b; });
}

PhasePlaneReport phase_plane_check(std::span<const CorrectionState> tr) {
  for (std::size_t i = 1; i < tr.size(); ++i)
    if (!(tr[i].t > tr[i - 1].t))
      fail(ErrorKind::pattern_not_found,
           "trajectory times must be strictly increasing (index " +
               std::to_string(i) + ")");
  PhasePlaneReport report;
  const std::size_t n = tr.size();
  if (n < 4) {
    report.reason = "trajectory too short";
    return report;
  }
  // Linear interpolation of the zero of f between samples i-1 and i.
  const auto crossing = [&](std::size_t i, auto f) {
    const double f0 = f(tr[i - 1]);
    const double f1 = f(tr[i]);
    if (f0 == f1) return tr[i].t;
    return tr[i - 1].t + (tr[i].t - tr[i - 1].t) * f0 / (f0 - f1);
  };
  const auto z_of = [](const CorrectionState& s) { return s.z; };
  const auto zt_of = [](const CorrectionState& s) { return s.z_t; };

  std::size_t i0 = 0, i1 = 0, i2 = 0;
  for (std::size_t i = 1; i < n && i0 == 0; ++i)
    if (tr[i - 1].z_t > 0.0 && tr[i].z_t <= 0.0 && tr[i].z > 0.0) i0 = i;
  if (i0 == 0) {
    report.reason = "z never reaches a positive maximum";
    return report;
  }
  for (std::size_t i = i0 + 1; i < n && i1 == 0; ++i)
    if (tr[i - 1].z > 0.0 && tr[i].z <= 0.0) i1 = i;
  if (i1 == 0) {
    report.reason = "z never changes sign after its maximum (h keeps increasing)";
    return report;
  }
  for (std::size_t i = i1 + 1; i < n && i2 == 0; ++i)
    if (tr[i - 1].z_t < 0.0 && tr[i].z_t >= 0.0 && tr[i].z < 0.0) i2 = i;
  if (i2 == 0) {
    report.reason = "z never reaches a negative minimum";
    return report;
  }
  report.found = true;
  report.t0 = crossing(i0, zt_of);
  report.t1 = crossing(i1, z_of);
  report.t2 = crossing(i2, zt_of);

  constexpr double slack = 1e-12;
  // sign: +1 nondecreasing, -1 nonincreasing, over node indices [lo, hi]
  const auto monotone = [&](std::size_t lo, std::size_t hi, int z_sign, int h_sign) {
    for (std::size_t i = lo + 1; i <= hi && i < n; ++i) {
      const double dz = tr[i].z - tr[i - 1].z;
      const double dh = tr[i].h - tr[i - 1].h;
      const double tol_z = slack * (1.0 + std::abs(tr[i].z));
      const double tol_h = slack * (1.0 + std::abs(tr[i].h));
      if (z_sign * dz < -tol_z || h_sign * dh < -tol_h) return false;
    }
    return true;
  };
  report.interval_pass[0] = monotone(0, i0 - 1, +1, +1);
  report.interval_pass[1] = monotone(i0, i1 - 1, -1, +1);
  report.interval_pass[2] = monotone(i1, i2 - 1, -1, -1);
  report.interval_pass[3] = monotone(i2, n - 1, +1, -1);
  return report;
}

DecayReport verify_decay_rates(const CorrectionTrajectory& trajectory, int k_max,
                               double fit_t_lo, double fit_t_hi, int samples) {
  const GasParameters& p = trajectory.params();
  const double t_end = trajectory.t_end();
  if (1.0 + t_end < 100.0)
    fail(ErrorKind::insufficient_span,
         "decay verification needs two decades of (1+t); t_end=" + std::to_string(t_end));
  if (fit_t_lo <= 0.0) {
    fit_t_lo = (1.0 + t_end) / 10.0 - 1.0;
    fit_t_hi = t_end;
  }
  if (fit_t_hi <= 0.0) fit_t_hi = t_end;
  const double b = p.expansion_exponent();
  const double log_threshold = p.mu + 2.0 / (p.gamma + 1.0);
  const double t_log_start = std::numbers::e - 1.0;
  const double t_early = (1.0 + t_end) / 100.0 - 1.0;

  std::vector<double> ts(samples);
  std::vector<AnsatzEvaluation> evals;
  evals.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    double t = std::pow(1.0 + t_end, static_cast<double>(i) / (samples - 1)) - 1.0;
    t = std::min(t, t_end);
    ts[i] = t;
    evals.push_back(ansatz_derivatives(trajectory, t, k_max));
  }

  DecayReport report;
  report.fit_t_lo = fit_t_lo;
  report.fit_t_hi = fit_t_hi;
  for (int k = 0; k <= k_max; ++k) {
    DecayRow row;
    row.k = k;
    if (k >= 1 && p.lambda == 1.0 && k >= log_threshold - 1e-12) {
      row.log_branch = true;
      row.boundary_case = std::abs(k - log_threshold) < 1e-9;
      row.predicted_exponent = -p.mu;
    } else {
      row.predicted_exponent = b - k;
    }
    TimeSeries series;
    row.inf_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
      const double t = ts[i];
      const double value = std::abs(evals[i].derivative(k));
      series.push_back({t, value});
      if (k >= 1 && t < t_log_start) continue;
      double envelope = std::pow(1.0 + t, row.predicted_exponent);
      if (row.log_branch) envelope *= std::log1p(t);
      const double ratio = value / envelope;
      row.sup_ratio = std::max(row.sup_ratio, ratio);
      row.inf_ratio = std::min(row.inf_ratio, ratio);
      if (t <= t_early) row.sup_ratio_early = std::max(row.sup_ratio_early, ratio);
    }
    const RateFit fit = fit_power_law(series, {fit_t_lo, fit_t_hi}, row.log_branch,
                                      "d^" + std::to_string(k) + " eta_x");
    row.fitted_exponent = fit.exponent;
    row.fit_r2 = fit.r2;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace vacuum

#include "vacuum/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vacuum/error.hpp"

namespace vacuum {

namespace {

std::vector<double> squared(std::span<const double> f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] * f[i];
  return out;
}

std::vector<double> spatial_derivative(const Grid& grid, std::span<const double> f,
                                       int order) {
  std::vector<double> d(f.begin(), f.end());
  for (int k = 0; k < order; ++k) d = node_derivative(grid, d);
  return d;
}

// NaN anywhere (an unavailable derivative) makes the result NaN.
double max_abs(std::span<const double> f) {
  double m = 0.0;
  for (double v : f) {
    if (std::isnan(v)) return v;
    m = std::max(m, std::abs(v));
  }
  return m;
}

std::string format_weight(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

}  // namespace

double weighted_integral(const Grid& grid, double exponent, std::span<const double> f) {
  const int n = grid.n_cells;
  double sum = 0.0;
  for (int c = 0; c < n; ++c) {
    if (exponent < 0.0 && (c == 0 || c == n - 1)) {
      sum += std::pow(grid.sigma_mid[c], exponent) * 0.5 * (f[c] + f[c + 1]);
    } else {
      sum += 0.5 * (std::pow(grid.sigma_nodes[c], exponent) * f[c] +
                    std::pow(grid.sigma_nodes[c + 1], exponent) * f[c + 1]);
    }
  }
  return sum * grid.dx;
}

double weighted_integral_midpoint(const Grid& grid, double exponent,
                                  std::span<const double> f) {
  double sum = 0.0;
  for (int c = 0; c < grid.n_cells; ++c)
    sum += std::pow(grid.sigma_mid[c], exponent) * 0.5 * (f[c] + f[c + 1]);
  return sum * grid.dx;
}

double energy_time_weight(const GasParameters& params, double t, int j) {
  return std::pow(1.0 + t, 2.0 * j - params.active_delta());
}

double energy_Ej(const StateDerivatives& d, const Grid& grid,
                 const GasParameters& params, int j) {
  if (j < 0 || j > 2)
    fail(ErrorKind::invalid_parameters, "E_j is available for j <= 2");
  const double alpha = params.alpha();
  const auto& f = d.order(j);
  const auto& f_next = d.order(j + 1);
  const std::vector<double> f_x = node_derivative(grid, f);
  const double value = weighted_integral(grid, alpha, squared(f)) +
                       weighted_integral(grid, alpha + 1.0, squared(f_x)) +
                       std::pow(1.0 + d.t, params.lambda + 1.0) *
                           weighted_integral(grid, alpha, squared(f_next));
  return energy_time_weight(params, d.t, j) * value;
}

double energy_Eji(const StateDerivatives& d, const Grid& grid,
                  const GasParameters& params, int j, int i) {
  if (i < 1) fail(ErrorKind::invalid_parameters, "E_{j,i} needs i >= 1");
  const double alpha = params.alpha();
  const std::vector<double> f_i = spatial_derivative(grid, d.order(j), i);
  const std::vector<double> f_i1 = node_derivative(grid, f_i);
  const double value = weighted_integral(grid, alpha + i + 1.0, squared(f_i1)) +
                       weighted_integral(grid, alpha + i - 1.0, squared(f_i));
  return energy_time_weight(params, d.t, j) * value;
}

WeightedSupNorms weighted_sup_norms(const StateDerivatives& d, const Grid& grid,
                                    const GasParameters& params) {
  WeightedSupNorms out;
  const std::size_t n = grid.size();
  std::vector<double> block_plain(n, 0.0);
  std::vector<double> block_weighted(n, 0.0);

  const auto add = [&](std::string name, int j, int i, double sigma_power,
                       std::span<const double> f, std::vector<double>& block) {
    const double tw = energy_time_weight(params, d.t, j);
    double sup = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double weight = sigma_power == 0.0 ? 1.0 : std::pow(grid.sigma_nodes[k], sigma_power);
      const double v = tw * weight * weight * f[k] * f[k];
      block[k] += v;
      sup = std::isnan(v) || std::isnan(sup) ? v + sup : std::max(sup, v);
    }
    out.entries.push_back({std::move(name), j, i, sup});
  };

  for (int j = 0; j <= 3; ++j)
    add("sup|d_t^" + std::to_string(j) + " w|^2", j, 0, 0.0, d.order(j), block_plain);
  for (int j = 0; j <= 1; ++j)
    add("sup|d_t^" + std::to_string(j) + " w_x|^2", j, 1, 0.0,
        node_derivative(grid, d.order(j)), block_plain);
  for (int j = 0; j <= 2; ++j) {
    for (int i = 1; i <= 2; ++i) {
      if (2 * i + j < 4) continue;
      const double power = 0.5 * (2 * i + j - 3);
      add("sup|sigma^" + format_weight(power) + " d_t^" + std::to_string(j) + " d_x^" +
              std::to_string(i) + " w|^2",
          j, i, power, spatial_derivative(grid, d.order(j), i), block_weighted);
    }
  }
  out.total = max_abs(block_plain) + max_abs(block_weighted);
  return out;
}

EnergyReport energy_report(const StateDerivatives& d, const EulerianSnapshot& snap,
                           const Grid& grid, const GasParameters& params,
                           const EnergyConfig& config) {
  EnergyReport r;
  r.t = d.t;
  for (int j = 0; j <= config.j_max; ++j) {
    r.E.push_back(energy_Ej(d, grid, params, j));
    r.total_energy += r.E.back();
  }
  for (int j = 0; j <= config.j_max; ++j) {
    for (int i = 1; i + j <= config.i_max; ++i) {
      r.E_mixed.push_back({j, i, energy_Eji(d, grid, params, j, i)});
      r.total_energy += r.E_mixed.back().value;
    }
  }
  r.sup = weighted_sup_norms(d, grid, params);
  r.sup_w = max_abs(d.w);
  r.sup_wt = max_abs(d.w_t);
  r.sup_wtt = max_abs(d.w_tt);
  r.sup_wttt = max_abs(d.w_ttt);
  r.mass = snap.mass(grid);
  r.x_minus = snap.x_minus;
  r.x_plus = snap.x_plus;
  r.eta_x_min = snap.eta_x_min;
  return r;
}

HardyResult hardy_ratio(const Grid& grid, std::span<const double> F, double theta) {
  if (!(theta > 1.0))
    fail(ErrorKind::invalid_theta, "Hardy weight exponent must exceed 1, got " +
                                       std::to_string(theta));
  const std::vector<double> F_x = node_derivative(grid, F);
  std::vector<double> energy(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) energy[i] = F[i] * F[i] + F_x[i] * F_x[i];
  HardyResult r;
  r.numerator = weighted_integral(grid, theta - 2.0, squared(F));
  r.denominator = weighted_integral(grid, theta, energy);
  if (r.denominator == 0.0) {
    r.degenerate = true;
    r.ratio = 0.0;
    return r;
  }
  r.ratio = r.numerator / r.denominator;
  return r;
}

}  // namespace vacuum

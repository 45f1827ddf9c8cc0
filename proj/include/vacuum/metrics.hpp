#pragma once

#include <span>
#include <string>
#include <vector>

#include "vacuum/gas_parameters.hpp"
#include "vacuum/solver.hpp"

namespace vacuum {

// Desk-scale subset of the weighted energy hierarchy.
struct EnergyConfig {
  int j_max = 2;  // time-derivative order of E_j (E_2 needs w_ttt)
  int i_max = 2;  // space order of E_{j,i}
  // Source w_ttt from backward differences of stored accelerations instead of
  // the exact time derivative of the semi-discrete equation.
  bool use_j3_fd = false;
  // Full derivative count of the theory, recorded for reference.
  int m_paper = 0;

  bool operator==(const EnergyConfig&) const = default;
};

// Trapezoid rule for int sigma^p f dx on the grid. When p < 0 the two end
// cells switch to the midpoint rule with f interpolated linearly.
double weighted_integral(const Grid& grid, double exponent, std::span<const double> f);
// Same weights evaluated with the midpoint rule on every cell.
double weighted_integral_midpoint(const Grid& grid, double exponent,
                                  std::span<const double> f);

// Time prefactor (1+t)^{2j - delta 1_{lambda<1}}.
double energy_time_weight(const GasParameters& params, double t, int j);

// E_j = (1+t)^{2j-delta 1} int [sigma^a (d_t^j w)^2 + sigma^{a+1} (d_t^j w_x)^2
//                              + (1+t)^{lambda+1} sigma^a (d_t^{j+1} w)^2],  j <= 2.
double energy_Ej(const StateDerivatives& d, const Grid& grid,
                 const GasParameters& params, int j);

// E_{j,i} = (1+t)^{2j-delta 1} int [sigma^{a+i+1} (d_t^j d_x^{i+1} w)^2
//                                   + sigma^{a+i-1} (d_t^j d_x^{i} w)^2],  i >= 1.
// Spatial derivatives come from repeated second-order differencing, so the
// (i+1)-th derivative loses accuracy near the ends as i grows.
double energy_Eji(const StateDerivatives& d, const Grid& grid,
                  const GasParameters& params, int j, int i);

struct WeightedSupEntry {
  std::string name;  // e.g. "sup|d_t^2 w|^2" or "sup|sigma^0.5 d_x^2 w|^2"
  int j = 0;         // time order
  int i = 0;         // space order
  double value = 0.0;
};

// sup over nodes of the time-weighted pointwise quantities: |d_t^j w|^2 for
// j <= 3, |d_t^j w_x|^2 for j <= 1, and |sigma^{(2i+j-3)/2} d_t^j d_x^i w|^2
// for 2i+j >= 4 with i <= 2, j <= 2.
struct WeightedSupNorms {
  std::vector<WeightedSupEntry> entries;
  double total = 0.0;
};
WeightedSupNorms weighted_sup_norms(const StateDerivatives& d, const Grid& grid,
                                    const GasParameters& params);

// Energies and sup norms of one state.
struct EnergyReport {
  double t = 0.0;
  std::vector<double> E;  // E_j, j = 0..j_max
  // E_{j,i} for i >= 1, i + j <= i_max, stored as (j, i, value)
  struct Mixed {
    int j, i;
    double value;
  };
  std::vector<Mixed> E_mixed;
  WeightedSupNorms sup;
  double total_energy = 0.0;  // sum of everything above except sup
  double sup_w = 0.0;         // max |w|
  double sup_wt = 0.0;        // max |w_t|
  double sup_wtt = 0.0;
  double sup_wttt = 0.0;
  double mass = 0.0;
  double x_minus = 0.0;
  double x_plus = 0.0;
  double eta_x_min = 0.0;
};

EnergyReport energy_report(const StateDerivatives& d, const EulerianSnapshot& snap,
                           const Grid& grid, const GasParameters& params,
                           const EnergyConfig& config = {});

struct HardyResult {
  double ratio = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  bool degenerate = false;  // 0/0, ratio reported as 0
};

// int sigma^{theta-2} F^2 / int sigma^theta (F^2 + F_x^2); InvalidTheta if theta <= 1.
HardyResult hardy_ratio(const Grid& grid, std::span<const double> F, double theta);

}  // namespace vacuum

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vacuum/gas_parameters.hpp"
#include "vacuum/rates.hpp"
#include "vacuum/simulation.hpp"

namespace vacuum {

// A fitted exponent compared against its theoretical value. One-sided rows
// pass when fitted <= predicted + tolerance; two-sided rows need
// |fitted - predicted| <= tolerance.
struct RateComparison {
  std::string quantity;
  RateFit fit;
  double predicted = 0.0;
  // The same prediction with delta -> 0+ (equal to `predicted` when the
  // exponent does not involve delta).
  double predicted_delta0 = 0.0;
  double tolerance = 0.0;
  bool two_sided = false;
  bool fitted = false;  // false when the fit itself failed
  std::string fit_error;
  double deviation = 0.0;  // fitted - predicted
  bool pass = false;
  bool pass_delta0 = false;
};

struct RateTable {
  FitWindow window;
  std::vector<RateComparison> rows;
  // Throws InvalidParameters for an unknown quantity.
  const RateComparison& row(std::string_view quantity) const;
  bool all_pass() const;
};

struct Theorem2Tolerances {
  double density = 0.1;
  double velocity = 0.1;
  double boundary = 0.05;
  double boundary_derivative = 0.1;
};

// Rows: density_difference, velocity_difference, boundary, and
// boundary_derivative_k for k = 1..3, fitted over `window` from the sample
// history of a run.
RateTable theorem2_report(const SimulationResult& run, FitWindow window,
                          const Theorem2Tolerances& tol = {});

// sup over samples of q(t)/reference, with the same sup restricted to the
// samples before the final decade. NaN samples are skipped.
struct BoundednessRow {
  std::string quantity;
  // E_j at the first sample where it is defined for E_j rows, the total
  // energy there otherwise
  double reference = 0.0;
  double sup_ratio = 0.0;
  double sup_ratio_before_final_decade = 0.0;
  double drift = 0.0;  // relative growth of the running sup over the final decade
  bool finite = false;
  bool pass = false;
};

struct EnergyDecayReport {
  std::vector<BoundednessRow> boundedness;
  // sup over samples of the weighted sup total divided by the total energy.
  double embedding_ratio = 0.0;
  // Unweighted decay of sup|d_t^j w| against -j + delta/2 1_{lambda<1}.
  RateTable decay;
  double drift_tolerance = 0.1;

  const BoundednessRow& row(std::string_view quantity) const;
  bool all_bounded() const;
};

// Zero data gives ratios of 0 (0/0 is read as no growth).
EnergyDecayReport energy_decay_report(const SimulationResult& run, FitWindow window,
                                      double drift_tolerance = 0.1,
                                      double rate_tolerance = 0.1);

}  // namespace vacuum

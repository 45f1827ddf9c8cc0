#include "vacuum/reports.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "vacuum/error.hpp"

namespace vacuum {

namespace {

template <class Get>
TimeSeries series_of(const SimulationResult& run, Get get) {
  TimeSeries s;
  s.reserve(run.samples.size());
  for (const auto& rec : run.samples) s.push_back({rec.t, std::abs(get(rec))});
  return s;
}

RateComparison compare(std::string quantity, const TimeSeries& series, FitWindow window,
                       double predicted, double predicted_delta0, double tolerance,
                       bool two_sided) {
  RateComparison c;
  c.quantity = std::move(quantity);
  c.predicted = predicted;
  c.predicted_delta0 = predicted_delta0;
  c.tolerance = tolerance;
  c.two_sided = two_sided;
  try {
    c.fit = fit_power_law(series, window, false, c.quantity);
    c.fitted = true;
  } catch (const Error& e) {
    c.fit_error = e.what();
    return c;
  }
  c.fit.predicted_exponent = predicted;
  c.deviation = c.fit.exponent - predicted;
  const auto ok = [&](double target) {
    const double dev = c.fit.exponent - target;
    return two_sided ? std::abs(dev) <= tolerance : dev <= tolerance;
  };
  c.pass = ok(predicted);
  c.pass_delta0 = ok(predicted_delta0);
  return c;
}

double ratio_or_zero(double value, double reference) {
  if (value == 0.0) return 0.0;
  return value / reference;  // +inf when the reference vanishes
}

BoundednessRow bounded_row(std::string quantity, const std::vector<double>& t,
                           const std::vector<double>& q, double reference,
                           double final_decade_start, double tolerance) {
  BoundednessRow row;
  row.quantity = std::move(quantity);
  row.reference = reference;
  row.finite = true;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::isnan(q[i])) continue;  // quantity unavailable at this sample
    const double r = ratio_or_zero(q[i], reference);
    if (!std::isfinite(r)) row.finite = false;
    row.sup_ratio = std::max(row.sup_ratio, r);
    if (t[i] <= final_decade_start)
      row.sup_ratio_before_final_decade = std::max(row.sup_ratio_before_final_decade, r);
  }
  if (row.sup_ratio_before_final_decade > 0.0)
    row.drift = row.sup_ratio / row.sup_ratio_before_final_decade - 1.0;
  else if (row.sup_ratio > 0.0)
    row.drift = std::numeric_limits<double>::infinity();
  row.pass = row.finite && row.drift <= tolerance;
  return row;
}

// First sample at which q is defined (the backward-difference w_ttt is not
// available at t = 0).
double first_defined(const std::vector<double>& q) {
  for (double v : q)
    if (!std::isnan(v)) return v;
  return 0.0;
}

}  // namespace

const RateComparison& RateTable::row(std::string_view quantity) const {
  for (const auto& r : rows)
    if (r.quantity == quantity) return r;
  fail(ErrorKind::invalid_parameters, "no rate row named '" + std::string(quantity) + "'");
}

bool RateTable::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

RateTable theorem2_report(const SimulationResult& run, FitWindow window,
                          const Theorem2Tolerances& tol) {
  const GasParameters& p = run.config.params;
  const double b = p.expansion_exponent();
  const double half_delta = 0.5 * p.active_delta();

  RateTable table;
  table.window = window;
  table.rows.push_back(compare(
      "density_difference",
      series_of(run, [](const SampleRecord& r) { return r.sup_density_difference; }), window,
      -2.0 * b + half_delta, -2.0 * b, tol.density, false));
  const double v = (p.lambda - p.gamma) / (p.gamma + 1.0);
  table.rows.push_back(compare(
      "velocity_difference",
      series_of(run, [](const SampleRecord& r) { return r.sup_velocity_difference; }),
      window, v, v, tol.velocity, false));
  table.rows.push_back(compare("boundary",
                               series_of(run, [](const SampleRecord& r) { return r.boundary[0]; }),
                               window, b, b, tol.boundary, true));
  for (int k = 1; k <= 3; ++k) {
    table.rows.push_back(compare(
        "boundary_derivative_" + std::to_string(k),
        series_of(run, [k](const SampleRecord& r) { return r.boundary[k]; }), window, b - k,
        b - k, tol.boundary_derivative, true));
  }
  return table;
}

const BoundednessRow& EnergyDecayReport::row(std::string_view quantity) const {
  for (const auto& r : boundedness)
    if (r.quantity == quantity) return r;
  fail(ErrorKind::invalid_parameters,
       "no boundedness row named '" + std::string(quantity) + "'");
}

bool EnergyDecayReport::all_bounded() const {
  return std::all_of(boundedness.begin(), boundedness.end(),
                     [](const auto& r) { return r.pass; });
}

EnergyDecayReport energy_decay_report(const SimulationResult& run, FitWindow window,
                                      double drift_tolerance, double rate_tolerance) {
  EnergyDecayReport report;
  report.drift_tolerance = drift_tolerance;
  if (run.samples.empty()) return report;

  const auto& first = run.samples.front().energy;
  const double t_last = run.samples.back().t;
  const double final_decade_start = (1.0 + t_last) / 10.0 - 1.0;
  std::vector<double> t;
  for (const auto& rec : run.samples) t.push_back(rec.t);

  const auto column = [&](auto get) {
    std::vector<double> q;
    for (const auto& rec : run.samples) q.push_back(get(rec.energy));
    return q;
  };

  for (std::size_t j = 0; j < first.E.size(); ++j) {
    const auto q = column([j](const EnergyReport& e) { return e.E[j]; });
    report.boundedness.push_back(
        bounded_row("E" + std::to_string(j), t, q, first_defined(q), final_decade_start,
                    drift_tolerance));
  }
  // Mixed and pointwise quantities may start at zero, so they are measured
  // against the total initial energy.
  const auto totals = column([](const EnergyReport& e) { return e.total_energy; });
  const double total0 = first_defined(totals);
  for (std::size_t m = 0; m < first.E_mixed.size(); ++m) {
    const auto& mixed = first.E_mixed[m];
    report.boundedness.push_back(bounded_row(
        "E" + std::to_string(mixed.j) + "," + std::to_string(mixed.i), t,
        column([m](const EnergyReport& e) { return e.E_mixed[m].value; }), total0,
        final_decade_start, drift_tolerance));
  }
  report.boundedness.push_back(
      bounded_row("total_energy", t, totals, total0, final_decade_start, drift_tolerance));
  for (std::size_t k = 0; k < first.sup.entries.size(); ++k) {
    report.boundedness.push_back(bounded_row(
        first.sup.entries[k].name, t,
        column([k](const EnergyReport& e) { return e.sup.entries[k].value; }), total0,
        final_decade_start, drift_tolerance));
  }
  report.boundedness.push_back(bounded_row(
      "weighted_sup_total", t, column([](const EnergyReport& e) { return e.sup.total; }),
      total0, final_decade_start, drift_tolerance));

  for (const auto& rec : run.samples) {
    if (rec.energy.total_energy > 0.0)
      report.embedding_ratio =
          std::max(report.embedding_ratio, rec.energy.sup.total / rec.energy.total_energy);
  }

  const GasParameters& p = run.config.params;
  const double half_delta = 0.5 * p.active_delta();
  report.decay.window = window;
  const std::array<double EnergyReport::*, 4> sup_fields{
      &EnergyReport::sup_w, &EnergyReport::sup_wt, &EnergyReport::sup_wtt,
      &EnergyReport::sup_wttt};
  for (int j = 0; j <= 3; ++j) {
    const auto field = sup_fields[j];
    report.decay.rows.push_back(compare(
        "sup_d_t" + std::to_string(j) + "_w",
        series_of(run, [field](const SampleRecord& r) { return r.energy.*field; }), window,
        -j + half_delta, -double(j), rate_tolerance, false));
  }
  return report;
}

}  // namespace vacuum

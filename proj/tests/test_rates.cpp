#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "vacuum/error.hpp"
#include "vacuum/rates.hpp"
#include "vacuum/reports.hpp"
#include "vacuum/simulation.hpp"

using namespace vacuum;

namespace {

TimeSeries sampled(std::function<double(double)> q, double t_end = 1e4, int n = 200) {
  TimeSeries s;
  for (double t : log_schedule(t_end, n)) s.push_back({t, q(t)});
  return s;
}

ErrorKind kind_of(auto f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::io_error;  // nothing thrown
}

// Run record with hand-made sample histories; quantities default to zero.
SimulationResult fabricated(const GasParameters& p, double t_end, int n,
                            std::function<void(SampleRecord&)> fill) {
  SimulationResult run;
  run.config.params = p;
  run.config.t_end = t_end;
  for (double t : log_schedule(t_end, n)) {
    SampleRecord r;
    r.t = t;
    r.energy.t = t;
    r.energy.E = {0.0, 0.0};
    r.energy.E_mixed = {{0, 1, 0.0}};
    r.energy.sup.entries = {{"sup|d_t^0 w|^2", 0, 0, 0.0}};
    fill(r);
    run.samples.push_back(r);
  }
  return run;
}

}  // namespace

TEST_CASE("log schedule") {
  const auto s = log_schedule(999.0, 3);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == doctest::Approx(9.0));
  CHECK(s[2] == doctest::Approx(99.0));
  CHECK(s[3] == 999.0);
}

TEST_CASE("power-law fit recovers exact exponents") {
  const auto s = sampled([](double t) { return 3.0 * std::pow(1 + t, -1.7); });
  const auto f = fit_power_law(s, {10, 1e4}, false, "q");
  CHECK(f.quantity == "q");
  CHECK(f.exponent == doctest::Approx(-1.7).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK(f.exponent_stderr < 1e-10);
  CHECK(f.samples_used > 20);
  CHECK(f.samples_excluded == 0);
}

TEST_CASE("log-corrected fit") {
  const auto s = sampled([](double t) { return 2.0 * std::pow(1 + t, -2.0) * std::log1p(t); });
  CHECK(fit_power_law(s, {10, 1e4}, true).exponent == doctest::Approx(-2.0).epsilon(1e-12));
  // Without the correction the log factor biases the exponent upward.
  CHECK(fit_power_law(s, {10, 1e4}, false).exponent > -1.9);
}

TEST_CASE("fit is invariant under scaling and reports exclusions") {
  const auto base = sampled([](double t) { return std::pow(1 + t, 0.4); });
  TimeSeries scaled = base;
  for (auto& p : scaled) p.value *= 1e-6;
  const auto a = fit_power_law(base, {10, 1e4});
  const auto b = fit_power_law(scaled, {10, 1e4});
  CHECK(a.exponent == doctest::Approx(b.exponent).epsilon(1e-12));
  CHECK(b.intercept - a.intercept == doctest::Approx(std::log(1e-6)));

  TimeSeries holes = base;
  int zeroed = 0;
  for (std::size_t i = 0; i < holes.size(); i += 10)
    if (holes[i].t >= 10) {
      holes[i].value = (zeroed % 2) ? 0.0 : NAN;
      ++zeroed;
    }
  const auto h = fit_power_law(holes, {10, 1e4});
  CHECK(h.samples_excluded == zeroed);
  CHECK(h.exponent == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("fit input errors") {
  const auto s = sampled([](double t) { return 1 + t; });
  CHECK(kind_of([&] { fit_power_law(s, {10, 50}); }) == ErrorKind::insufficient_samples);
  CHECK(kind_of([&] { fit_power_law(s, {0, 50}); }) == ErrorKind::insufficient_samples);
  const auto sparse = sampled([](double t) { return 1 + t; }, 1e4, 10);
  CHECK(kind_of([&] { fit_power_law(sparse, {10, 1e4}); }) == ErrorKind::insufficient_samples);
  const auto zero = sampled([](double) { return 0.0; });
  CHECK(kind_of([&] { fit_power_law(zero, {10, 1e4}); }) == ErrorKind::all_nonpositive);
}

TEST_CASE("make_series takes magnitudes") {
  const std::vector<double> t{1, 2, 3};
  const std::vector<double> q{-1, 2, -3};
  const auto s = make_series(t, q);
  REQUIRE(s.size() == 3);
  CHECK(s[0].value == 1);
  CHECK(s[2].value == 3);
  CHECK(s[2].t == 3);
}

TEST_CASE("rate rows on an unperturbed frozen run") {
  SimulationConfig c;
  c.params = make_parameters(2.0, 1.0, 3.0);
  c.n_cells = 64;
  c.t_end = 1000.0;
  c.amplitude = 0.0;
  c.frozen_correction = true;
  c.samples = 60;
  c.snapshots = 0;
  const auto run = run_simulation(c);
  REQUIRE(run.completed());
  const auto table = theorem2_report(run, {10, 1000});
  const double b = 2.0 / 3.0;
  const auto& boundary = table.row("boundary");
  CHECK(boundary.fitted);
  CHECK(boundary.two_sided);
  CHECK(boundary.fit.exponent == doctest::Approx(b).epsilon(1e-10));
  CHECK(boundary.pass);
  for (int k = 1; k <= 3; ++k) {
    const auto& row = table.row("boundary_derivative_" + std::to_string(k));
    CHECK(row.fit.exponent == doctest::Approx(b - k).epsilon(1e-8));
    CHECK(row.pass);
  }
  // No perturbation: the difference rows have nothing to fit.
  const auto& density = table.row("density_difference");
  CHECK_FALSE(density.fitted);
  CHECK_FALSE(density.pass);
  CHECK(density.fit_error.find("AllNonpositive") != std::string::npos);
  CHECK_FALSE(table.all_pass());
  CHECK(kind_of([&] { table.row("nonsense"); }) == ErrorKind::invalid_parameters);
}

TEST_CASE("one-sided rows and the delta -> 0 prediction") {
  // (1.5, 0.5, 1): b = 0.6, delta = 0.6, so the density bound is -0.9 and
  // -1.2 without the delta loss.
  const GasParameters p = make_parameters(1.5, 0.5, 1.0);
  const auto with_density = [&](double e) {
    return fabricated(p, 1e4, 200, [e](SampleRecord& r) {
      r.sup_density_difference = std::pow(1 + r.t, e);
      r.sup_velocity_difference = std::pow(1 + r.t, -0.9);
      r.boundary = {std::pow(1 + r.t, 0.62), 0, 0, 0};
    });
  };
  const auto fast = theorem2_report(with_density(-1.3), {10, 1e4});
  CHECK(fast.row("density_difference").predicted == doctest::Approx(-0.9));
  CHECK(fast.row("density_difference").predicted_delta0 == doctest::Approx(-1.2));
  CHECK(fast.row("density_difference").pass);
  CHECK(fast.row("density_difference").pass_delta0);

  const auto mid = theorem2_report(with_density(-1.0), {10, 1e4});
  CHECK(mid.row("density_difference").pass);
  CHECK_FALSE(mid.row("density_difference").pass_delta0);

  const auto slow = theorem2_report(with_density(-0.7), {10, 1e4});
  CHECK_FALSE(slow.row("density_difference").pass);
  CHECK(slow.row("density_difference").deviation == doctest::Approx(0.2).epsilon(1e-9));

  // Velocity bound (lambda - gamma)/(gamma + 1) = -0.4, met by -0.9.
  CHECK(fast.row("velocity_difference").predicted == doctest::Approx(-0.4));
  CHECK(fast.row("velocity_difference").pass);
  // Boundary is two-sided with tolerance 0.05: 0.62 vs 0.6.
  CHECK(fast.row("boundary").pass);
}

TEST_CASE("energy boundedness on zero data") {
  const auto run = fabricated(make_parameters(1.5, 0.5, 1.0), 1e4, 100, [](SampleRecord&) {});
  const auto r = energy_decay_report(run, {10, 1e4});
  CHECK(r.all_bounded());
  for (const auto& row : r.boundedness) {
    CAPTURE(row.quantity);
    CHECK(row.sup_ratio == 0.0);
    CHECK(row.drift == 0.0);
    CHECK(row.finite);
  }
  CHECK(r.embedding_ratio == 0.0);
  CHECK_FALSE(r.decay.row("sup_d_t0_w").fitted);
}

TEST_CASE("energy boundedness detects late growth") {
  const GasParameters p = make_parameters(1.5, 0.5, 1.0);
  const auto run = fabricated(p, 1e4, 200, [](SampleRecord& r) {
    r.energy.E = {1.0 / (1 + r.t), 1.0 + std::log1p(r.t)};
    // zero at t = 0, bounded afterwards
    r.energy.E_mixed[0].value = r.t / (1 + r.t);
    r.energy.total_energy = r.energy.E[0] + r.energy.E[1] + r.energy.E_mixed[0].value;
    r.energy.sup.entries[0].value = 0.5;
    r.energy.sup.total = 0.5;
    r.energy.sup_w = std::pow(1 + r.t, 0.2);
    r.energy.sup_wt = std::pow(1 + r.t, -0.8);
    r.energy.sup_wtt = std::pow(1 + r.t, -1.8);
    r.energy.sup_wttt = std::pow(1 + r.t, -2.8);
  });
  const auto r = energy_decay_report(run, {10, 1e4});
  CHECK(r.row("E0").pass);
  CHECK(r.row("E0").sup_ratio == doctest::Approx(1.0));
  // ln growth: 1+ln(1e4) against 1+ln(1e3) over the last decade.
  const auto& e1 = r.row("E1");
  CHECK(e1.drift == doctest::Approx((1 + std::log(1e4 + 1)) / (1 + std::log(1e3 + 1)) - 1)
                        .epsilon(1e-2));
  CHECK_FALSE(e1.pass);
  const auto& mixed = r.row("E0,1");
  CHECK(mixed.reference == doctest::Approx(2.0));
  CHECK(mixed.finite);
  CHECK(mixed.pass);
  CHECK(r.row("sup|d_t^0 w|^2").sup_ratio == doctest::Approx(0.25));
  CHECK(r.embedding_ratio == doctest::Approx(0.25));
  CHECK_FALSE(r.all_bounded());
  // Decay rows: -j + delta/2 = -j + 0.3.
  for (int j = 0; j <= 3; ++j) {
    const auto& row = r.decay.row("sup_d_t" + std::to_string(j) + "_w");
    CHECK(row.predicted == doctest::Approx(-j + 0.3));
    CHECK(row.fit.exponent == doctest::Approx(0.2 - j).epsilon(1e-10));
    CHECK(row.pass);
  }
  CHECK(kind_of([&] { r.row("E9"); }) == ErrorKind::invalid_parameters);
}

TEST_CASE("boundedness against a vanishing reference") {
  const auto run = fabricated(make_parameters(2.0, 1.0, 3.0), 1e3, 60, [](SampleRecord& r) {
    r.energy.E = {r.t, 0.0};
    r.energy.total_energy = r.t;
  });
  const auto r = energy_decay_report(run, {10, 1e3});
  CHECK_FALSE(r.row("E0").finite);
  CHECK_FALSE(r.row("E0").pass);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "vacuum/barenblatt.hpp"
#include "vacuum/correction.hpp"
#include "vacuum/error.hpp"
#include "vacuum/metrics.hpp"
#include "vacuum/solver.hpp"

using namespace vacuum;

namespace {

// int_{-1}^{1} (1-y^2)^p dy
double beta_integral(double p) {
  return std::sqrt(std::numbers::pi) * std::tgamma(p + 1) / std::tgamma(p + 1.5);
}

template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

StateDerivatives from_nodes(const Grid& g, double t, auto w, auto w_t) {
  StateDerivatives d;
  d.t = t;
  for (double x : g.nodes) {
    d.w.push_back(w(x));
    d.w_t.push_back(w_t(x));
  }
  d.w_tt.assign(g.size(), 0.0);
  d.w_ttt.assign(g.size(), 0.0);
  return d;
}

struct Fixture {
  GasParameters params = make_parameters(2.0, 1.0, 3.0);
  BarenblattProfile profile = derive_profile(params, 1.0);
};

}  // namespace

TEST_CASE("time weight of the energies") {
  const GasParameters sub = make_parameters(1.5, 0.5, 1.0);  // delta = 0.6
  CHECK(energy_time_weight(sub, 3.0, 0) == doctest::Approx(std::pow(4.0, -0.6)));
  CHECK(energy_time_weight(sub, 3.0, 2) == doctest::Approx(std::pow(4.0, 3.4)));
  const GasParameters crit = make_parameters(2.0, 1.0, 3.0);  // delta inactive
  CHECK(energy_time_weight(crit, 3.0, 1) == doctest::Approx(16.0));
}

TEST_CASE("weighted integrals against closed forms") {
  const Fixture f;
  const Grid g = build_grid(f.profile, 400);
  const double A = f.profile.A, L = f.profile.L;
  std::vector<double> one(g.size(), 1.0);
  for (double p : {0.0, 1.0, 2.5}) {
    CAPTURE(p);
    const double exact = std::pow(A, p) * L * beta_integral(p);
    CHECK(weighted_integral(g, p, one) == doctest::Approx(exact).epsilon(1e-4));
    CHECK(weighted_integral_midpoint(g, p, one) == doctest::Approx(exact).epsilon(1e-4));
  }
  // Integrable endpoint singularity: the end cells fall back to the midpoint rule.
  const double exact = std::pow(A, -0.5) * L * beta_integral(-0.5);
  CHECK(weighted_integral(g, -0.5, one) == doctest::Approx(exact).epsilon(0.02));
}

TEST_CASE("trapezoid and midpoint weights converge together") {
  const Fixture f;
  double prev = 1.0;
  for (int n : {100, 200, 400}) {
    const Grid g = build_grid(f.profile, n);
    std::vector<double> fx;
    for (double x : g.nodes) fx.push_back(x * x + std::cos(x));
    const double tr = weighted_integral(g, 1.0, fx);
    const double mid = weighted_integral_midpoint(g, 1.0, fx);
    const double gap = std::abs(tr - mid) / std::abs(tr);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("E0 of a dilation matches direct quadrature") {
  // gamma = 2: E0 = eps^2 int [sigma x^2 + sigma^2] at t = 0, delta inactive.
  const Fixture f;
  const double eps = 0.01, A = f.profile.A, B = f.profile.B, L = f.profile.L;
  const auto sig = [&](double x) { return A - B * x * x; };
  const double exact =
      eps * eps * simpson([&](double x) { return sig(x) * x * x + sig(x) * sig(x); }, -L, L, 2000);
  const Grid g = build_grid(f.profile, 400);
  const auto d = from_nodes(g, 0.0, [&](double x) { return eps * x; }, [](double) { return 0.0; });
  CHECK(energy_Ej(d, g, f.params, 0) == doctest::Approx(exact).epsilon(1e-4));

  // The kinetic term carries (1+t)^{lambda+1}: at t = 1 a kick doubles twice.
  const auto k = from_nodes(g, 1.0, [](double) { return 0.0; }, [&](double x) { return eps * x; });
  const double kinetic = eps * eps * simpson([&](double x) { return sig(x) * x * x; }, -L, L, 2000);
  CHECK(energy_Ej(k, g, f.params, 0) == doctest::Approx(4.0 * kinetic).epsilon(1e-4));
}

TEST_CASE("E01 of the bump matches the analytic derivatives") {
  const Fixture f;
  const double eps = 0.01, A = f.profile.A, B = f.profile.B, L = f.profile.L;
  const auto sig = [&](double x) { return A - B * x * x; };
  // w = eps x sigma / A,  w_x = eps (1 - 3 B x^2 / A),  w_xx = -6 eps B x / A.
  const auto wx = [&](double x) { return eps * (1 - 3 * B * x * x / A); };
  const auto wxx = [&](double x) { return -6 * eps * B * x / A; };
  const double exact = simpson(
      [&](double x) { return std::pow(sig(x), 3) * wxx(x) * wxx(x) + sig(x) * wx(x) * wx(x); }, -L,
      L, 2000);
  const Grid g = build_grid(f.profile, 800);
  const auto d = from_nodes(g, 0.0, [&](double x) { return eps * x * sig(x) / A; },
                            [](double) { return 0.0; });
  CHECK(energy_Eji(d, g, f.params, 0, 1) == doctest::Approx(exact).epsilon(1e-3));
  // E_{1,1} vanishes for data at rest.
  CHECK(energy_Eji(d, g, f.params, 1, 1) == 0.0);
}

TEST_CASE("energies are quadratic in the perturbation") {
  const Fixture f;
  const Grid g = build_grid(f.profile, 100);
  const auto w = [](double x) { return 0.01 * std::sin(x); };
  const auto v = [](double x) { return 0.02 * x; };
  const auto w2 = [&](double x) { return 2 * w(x); };
  const auto v2 = [&](double x) { return 2 * v(x); };
  const auto d1 = from_nodes(g, 2.0, w, v);
  const auto d2 = from_nodes(g, 2.0, w2, v2);
  CHECK(energy_Ej(d2, g, f.params, 0) == doctest::Approx(4 * energy_Ej(d1, g, f.params, 0)));
  CHECK(energy_Eji(d2, g, f.params, 0, 2) ==
        doctest::Approx(4 * energy_Eji(d1, g, f.params, 0, 2)));
  const auto s1 = weighted_sup_norms(d1, g, f.params);
  const auto s2 = weighted_sup_norms(d2, g, f.params);
  CHECK(s2.total == doctest::Approx(4 * s1.total));
  CHECK_THROWS_AS(energy_Ej(d1, g, f.params, 3), Error);
}

TEST_CASE("weighted sup norm entries") {
  const Fixture f;
  const Grid g = build_grid(f.profile, 64);
  const auto d = from_nodes(g, 3.0, [](double x) { return 0.1 * x; }, [](double) { return 0.0; });
  const auto s = weighted_sup_norms(d, g, f.params);
  // j <= 3 plain, two w_x entries, and (j, i) in {(0,2), (1,2), (2,1), (2,2)}.
  REQUIRE(s.entries.size() == 10);
  CHECK(s.entries[0].name == "sup|d_t^0 w|^2");
  CHECK(s.entries[0].value == doctest::Approx(0.01 * f.profile.L * f.profile.L));
  CHECK(s.entries[4].name == "sup|d_t^0 w_x|^2");
  CHECK(s.entries[4].value == doctest::Approx(0.01));
  bool saw_weighted = false;
  for (const auto& e : s.entries)
    if (e.name == "sup|sigma^0.5 d_t^0 d_x^2 w|^2") {
      saw_weighted = true;
      CHECK(e.value <= 1e-20);  // w_xx = 0
    }
  CHECK(saw_weighted);
  // Plain block: w^2 + w_x^2 peaks at the ends.
  CHECK(s.total == doctest::Approx(0.01 * (f.profile.L * f.profile.L + 1)));
}

TEST_CASE("energy report layout") {
  const Fixture f;
  const Grid g = build_grid(f.profile, 64);
  const auto traj = CorrectionTrajectory::frozen(f.params, 10.0);
  SolverState state = initial_data(g, f.profile, "bump", 0.01);
  const PerturbationOperator op(g, f.params);
  const auto d = evaluate_derivatives(state, op, traj);
  const auto snap = reconstruct_eulerian(state, g, f.params, traj);
  const auto r = energy_report(d, snap, g, f.params, EnergyConfig{});
  CHECK(r.E.size() == 3);
  // (j, i) with i >= 1 and i + j <= 2
  REQUIRE(r.E_mixed.size() == 3);
  CHECK(r.E_mixed[0].j == 0);
  CHECK(r.E_mixed[1].i == 2);
  CHECK(r.E_mixed[2].j == 1);
  double sum = 0.0;
  for (double e : r.E) sum += e;
  for (const auto& m : r.E_mixed) sum += m.value;
  CHECK(r.total_energy == doctest::Approx(sum));
  CHECK(r.sup_w == doctest::Approx(0.01 * 2 / std::sqrt(27.0) * f.profile.L).epsilon(1e-3));
  CHECK(r.mass == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("Hardy ratio for constant F at theta = 2") {
  // int 1 / int sigma^2 = 2L / (16 A^2 L / 15) = 15 / (8 A^2)
  const Fixture f;
  const Grid g = build_grid(f.profile, 800);
  const std::vector<double> one(g.size(), 1.0);
  const auto r = hardy_ratio(g, one, 2.0);
  CHECK_FALSE(r.degenerate);
  CHECK(r.ratio == doctest::Approx(15.0 / (8 * f.profile.A * f.profile.A)).epsilon(1e-5));
}

TEST_CASE("Hardy ratio with an integrable singular weight") {
  const Fixture f;
  const double exact = beta_integral(-0.5) / (f.profile.A * f.profile.A * beta_integral(1.5));
  const Grid g = build_grid(f.profile, 1600);
  const std::vector<double> one(g.size(), 1.0);
  CHECK(hardy_ratio(g, one, 1.5).ratio == doctest::Approx(exact).epsilon(0.02));
}

TEST_CASE("Hardy ratio input checks") {
  const Fixture f;
  const Grid g = build_grid(f.profile, 32);
  const std::vector<double> zero(g.size(), 0.0);
  const auto r = hardy_ratio(g, zero, 2.0);
  CHECK(r.degenerate);
  CHECK(r.ratio == 0.0);
  try {
    hardy_ratio(g, zero, 1.0);
    FAIL("expected InvalidTheta");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_theta);
  }
}

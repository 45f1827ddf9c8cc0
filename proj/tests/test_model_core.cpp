#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <tuple>

#include "vacuum/barenblatt.hpp"
#include "vacuum/error.hpp"
#include "vacuum/gas_parameters.hpp"
#include "vacuum/quadrature.hpp"

using namespace vacuum;

namespace {

// sqrt(pi) Gamma(a+1) / Gamma(a+3/2), the closed form of int_{-1}^{1} (1-y^2)^a dy.
double beta_normalization(double a) {
  return std::sqrt(std::numbers::pi) * std::tgamma(a + 1.0) / std::tgamma(a + 1.5);
}

// Composite Simpson on [a, b] with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("parameter validation rejects inadmissible gases") {
  CHECK_NOTHROW(make_parameters(1.5, 0.5, 1.0));
  CHECK_NOTHROW(make_parameters(2.0, 1.0, 3.0));
  const auto kind_of = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::io_error;  // sentinel: nothing thrown
  };
  CHECK(kind_of([] { make_parameters(1.0, 0.5, 1.0); }) == ErrorKind::invalid_parameters);
  CHECK(kind_of([] { make_parameters(1.5, 0.0, 1.0); }) == ErrorKind::invalid_parameters);
  CHECK(kind_of([] { make_parameters(1.5, 1.2, 1.0); }) == ErrorKind::invalid_parameters);
  CHECK(kind_of([] { make_parameters(1.5, 0.5, 0.0); }) == ErrorKind::invalid_parameters);
  // delta must lie in (0, 2(lambda+1)/(gamma+1)) = (0, 1.2)
  CHECK(kind_of([] { make_parameters(1.5, 0.5, 1.0, 1.2); }) == ErrorKind::invalid_parameters);
  CHECK(kind_of([] { make_parameters(1.5, 0.5, 1.0, 0.0); }) == ErrorKind::invalid_parameters);
  CHECK_NOTHROW(make_parameters(1.5, 0.5, 1.0, 1.19));
}

TEST_CASE("derived parameter quantities") {
  const GasParameters p = make_parameters(1.5, 0.5, 1.0);
  CHECK(p.alpha() == 2.0);
  CHECK(p.beta() == 1.5);
  CHECK(p.expansion_exponent() == doctest::Approx(0.6));
  CHECK(p.delta == doctest::Approx(0.6));  // midpoint default
  CHECK(p.lambda_below_one());
  CHECK(p.active_delta() == doctest::Approx(0.6));
  CHECK(make_parameters(2.0, 1.0, 3.0).active_delta() == 0.0);
  CHECK(p.damping(3.0) == doctest::Approx(0.5));

  CHECK(make_parameters(1.5, 0.5, 0.1).global_existence_regime());
  CHECK(make_parameters(2.0, 1.0, 3.0).global_existence_regime());
  CHECK_FALSE(make_parameters(2.0, 1.0, 2.0).global_existence_regime());
  CHECK_FALSE(make_parameters(2.0, 1.0, 1.0).global_existence_regime());

  // 4 + [alpha] below lambda = 1; min with [mu + 2/(gamma+1)] at lambda = 1.
  CHECK(p.derivative_count() == 6);
  CHECK(make_parameters(3.0, 1.0, 2.5).derivative_count() == 3);
  CHECK(make_parameters(2.0, 1.0, 10.0).derivative_count() == 5);
}

TEST_CASE("adaptive quadrature handles smooth and endpoint-singular integrands") {
  const auto r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
  const auto s = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("profile normalization matches the Beta-function closed form") {
  for (double a : {0.5, 1.0, 2.0, 2.5, 1.0 / 0.7, 3.3}) {
    CAPTURE(a);
    CHECK(profile_normalization(a) == doctest::Approx(beta_normalization(a)).epsilon(1e-11));
  }
  // gamma = 2: int (1 - y^2) dy = 4/3
  CHECK(profile_normalization(1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("Barenblatt constants") {
  const GasParameters p = make_parameters(2.0, 1.0, 3.0);
  const BarenblattProfile prof = derive_profile(p, 2.0);
  CHECK(prof.B == doctest::Approx(1.0).epsilon(1e-15));
  // A^{(gamma+1)/(2(gamma-1))} = M sqrt(B) / I, with I = 4/3.
  CHECK(std::pow(prof.A, 1.5) == doctest::Approx(2.0 * 0.75).epsilon(1e-12));
  CHECK(prof.L == doctest::Approx(std::sqrt(prof.A / prof.B)));

  const GasParameters q = make_parameters(1.5, 0.5, 1.0);
  const BarenblattProfile pq = derive_profile(q, 1.0);
  CHECK(pq.B == doctest::Approx(1.0 * 1.5 * 0.5 / 5.0));
  CHECK(std::pow(pq.A, 2.5 / 1.0) ==
        doctest::Approx(std::sqrt(pq.B) / beta_normalization(2.0)).epsilon(1e-11));
  CHECK_THROWS_AS(derive_profile(q, 0.0), Error);
}

TEST_CASE("sigma on the reference interval") {
  const BarenblattProfile prof = derive_profile(make_parameters(1.5, 0.5, 1.0), 1.0);
  CHECK(sigma(prof, 0.0) == prof.A);
  CHECK(sigma(prof, prof.L) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(sigma(prof, -prof.L) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(sigma(prof, 0.5 * prof.L) == doctest::Approx(0.75 * prof.A));
  for (double x : {0.1, 0.7, 1.3, 2.0}) CHECK(sigma(prof, x) == sigma(prof, -x));
  CHECK(sigma_derivative(prof, prof.L) == doctest::Approx(-2.0 * prof.B * prof.L));
  try {
    sigma(prof, 1.01 * prof.L);
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain_error);
  }
}

TEST_CASE("Barenblatt density, velocity and boundary") {
  const GasParameters p = make_parameters(2.0, 1.0, 3.0);
  const BarenblattProfile prof = derive_profile(p, 1.0);
  CHECK(barenblatt_density(prof, p, 0.0, 0.0) == doctest::Approx(std::pow(prof.A, p.alpha())));
  for (double t : {0.0, 1.0, 10.0}) {
    const auto [lo, hi] = barenblatt_boundary(prof, p, t);
    CHECK(barenblatt_density(prof, p, hi, t) <= 1e-15);
    CHECK(barenblatt_density(prof, p, lo, t) <= 1e-15);
    CHECK_THROWS_AS(barenblatt_density(prof, p, 1.01 * hi, t), Error);
    CHECK(barenblatt_density_clamped(prof, p, 1.01 * hi, t) == 0.0);
  }
  CHECK(barenblatt_velocity(p, 1.0, 0.0) == doctest::Approx(2.0 / 3.0));
  CHECK(barenblatt_velocity(p, 0.0, 5.0) == 0.0);
  CHECK(barenblatt_velocity(p, -0.7, 2.0) == -barenblatt_velocity(p, 0.7, 2.0));

  const auto b0 = barenblatt_boundary(prof, p, 0.0);
  CHECK(b0.first == -prof.L);
  CHECK(b0.second == prof.L);
  // (1+t)^{2/3} = 2 at t = 2^{1.5} - 1
  const auto b2 = barenblatt_boundary(prof, p, std::pow(2.0, 1.5) - 1.0);
  CHECK(b2.second == doctest::Approx(2.0 * prof.L).epsilon(1e-14));
  CHECK(b2.first == doctest::Approx(-2.0 * prof.L).epsilon(1e-14));
}

TEST_CASE("Barenblatt mass is conserved") {
  for (double gamma : {1.5, 2.0, 3.0}) {
    const GasParameters p = make_parameters(gamma, 0.5, 1.0);
    const BarenblattProfile prof = derive_profile(p, 1.7);
    for (double t : {0.0, 1.0, 10.0, 100.0}) {
      CAPTURE(gamma);
      CAPTURE(t);
      CHECK(barenblatt_mass(prof, p, t) == doctest::Approx(1.7).epsilon(1e-10));
      // Independent check: Simpson in x (exact for the quartic at gamma = 1.5).
      const double edge = barenblatt_boundary(prof, p, t).second;
      const double simpson_mass = simpson(
          [&](double x) { return barenblatt_density_clamped(prof, p, x, t); }, -edge, edge, 20000);
      CHECK(simpson_mass == doctest::Approx(1.7).epsilon(gamma == 1.5 ? 1e-12 : 1e-5));
    }
  }
}

TEST_CASE("Barenblatt pair solves the porous-media system") {
  for (auto [g, l, mu] : {std::tuple{1.5, 0.5, 1.0}, std::tuple{2.0, 1.0, 3.0},
                          std::tuple{3.0, 0.3, 2.0}}) {
    const GasParameters p = make_parameters(g, l, mu);
    const BarenblattProfile prof = derive_profile(p, 1.0);
    for (double t : {0.0, 0.5, 7.0}) {
      const double edge = barenblatt_boundary(prof, p, t).second;
      for (int i = 0; i < 20; ++i) {
        const double x = edge * (-0.95 + 1.9 * i / 19.0);
        const auto r = porous_media_residual(prof, p, x, t);
        CHECK(std::abs(r.mass_equation) <= 1e-6 * (1.0 + r.scale));
        CHECK(std::abs(r.darcy_law) <= 1e-10 * (1.0 + r.scale));
      }
    }
  }
}

TEST_CASE("porous-media residual agrees with finite differences of the density") {
  // Oracle independent of the analytic derivatives: central differences of
  // the closed-form density and pressure p = rho^gamma/gamma.
  const GasParameters p = make_parameters(2.0, 1.0, 3.0);
  const BarenblattProfile prof = derive_profile(p, 1.0);
  const double t = 1.5;
  const double hx = 1e-4;
  const double ht = 1e-5;
  const auto rho = [&](double x, double s) { return barenblatt_density(prof, p, x, s); };
  const auto pressure = [&](double x, double s) { return std::pow(rho(x, s), p.gamma) / p.gamma; };
  for (double x : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
    const double rho_t = (rho(x, t + ht) - rho(x, t - ht)) / (2 * ht);
    const double p_xx =
        (pressure(x + hx, t) - 2 * pressure(x, t) + pressure(x - hx, t)) / (hx * hx);
    const double residual = rho_t - std::pow(1 + t, p.lambda) / p.mu * p_xx;
    CHECK(std::abs(residual) <= 1e-6 * std::abs(rho_t) + 1e-7);
  }
}

TEST_CASE("error kinds have stable names") {
  CHECK(std::string(to_string(ErrorKind::map_degenerate)) == "MapDegenerate");
  CHECK(std::string(to_string(ErrorKind::invalid_parameters)) == "InvalidParameters");
  const Error e(ErrorKind::domain_error, "x");
  CHECK(std::string(e.what()) == "DomainError: x");
}

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nlspinor/config.hpp"
#include "nlspinor/error.hpp"
#include "nlspinor/metric.hpp"
#include "nlspinor/observables.hpp"
#include "nlspinor/spinor.hpp"
#include "oracles.hpp"

using namespace nlspinor;

namespace {

ModelParams fixture(const char* name) { return load_config(oracle::fixture(name)).params; }

}  // namespace

TEST_CASE("stress components") {
  CHECK(T00_of_S(2.0, Linear{}) == 0.0);
  CHECK(T00_of_S(2.0, Quadratic{1.0}) == 4.0);
  CHECK(T00_of_S(2.0, Power{1.0, 3.0}) == doctest::Approx(16.0).epsilon(1e-15));
  CHECK(T11_of_S(2.0, Linear{}, 1.0) == 2.0);
  CHECK(T11_of_S(3.0, Quadratic{1.0}, 0.0) == -9.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> S(0.01, 10.0);
  const Nonlinearity kinds[] = {Linear{}, Quadratic{0.6}, Power{2.0, 5.0}};
  for (const auto& nl : kinds) {
    for (int i = 0; i < 20; ++i) {
      const double s = S(rng);
      const double m = 0.7;
      const double lhs = T00_of_S(s, nl) - T11_of_S(s, nl, m);
      CHECK(std::abs(lhs - (s * nonlinear_term_prime(nl, s) - m * s)) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("energy density two routes") {
  for (const char* name : {"quadratic.cfg", "power3.cfg", "power4.cfg"}) {
    const ModelParams p = fixture(name);
    for (double xi : window_grid(valid_window(p), 200)) {
      CHECK(oracle::relative(energy_density_invariant(xi, p), energy_density_closed(xi, p)) < 1e-10);
    }
  }
  const ModelParams lin = fixture("linear.cfg");
  CHECK(energy_density_invariant(0.4, lin) == 0.0);
  CHECK(energy_density_closed(0.4, lin) == 0.0);
}

TEST_CASE("energy exponent") {
  ModelParams p = fixture("quadratic.cfg");
  CHECK(energy_exponent(p) == -p.A() / 4);
  for (double G : {0.5, 1.0, 4.0}) {
    p.G = G;
    p.nonlinearity = Power{1.0, 2.0};
    CHECK(energy_exponent(p) == doctest::Approx(-p.A() / 4).epsilon(1e-14));
    p.nonlinearity = Power{1.0, 3.0};
    CHECK(energy_exponent(p) == doctest::Approx(p.A() / (4 * G) * (-3 * (4 + 3 * G) + 5 * G + 8)).epsilon(1e-14));
    CHECK(energy_exponent(p) < 0.0);
  }
}

TEST_CASE("density vanishes at theta = pi") {
  ModelParams p = fixture("quadratic.cfg");
  p.theta = std::numbers::pi;
  CHECK(std::abs(energy_density_invariant(0.5, p)) < 1e-15);
}

TEST_CASE("volume element") {
  const ModelParams p = fixture("quadratic.cfg");
  const MetricPoint mp = alpha_beta_gamma(0.3, p);
  CHECK(volume_element(mp, p.theta) ==
        doctest::Approx(std::sqrt(-mp.g11 * mp.g22 * mp.g33) / std::sin(p.theta)).epsilon(1e-14));
}

TEST_CASE("current in the static gauge") {
  const ModelParams p = fixture("quadratic.cfg");
  REQUIRE(static_gauge(p));
  for (double xi : window_grid(valid_window(p), 200)) {
    const Current j = current(xi, p);
    CHECK(std::abs(j.j1) < 1e-10);
    CHECK(std::abs(j.j2) < 1e-10);
    CHECK(j.j3 == 0.0);
    CHECK(j.j0 > 0.0);
    CHECK(oracle::relative(charge_density(xi, p), charge_density_from_current(xi, p)) < 1e-10);
  }
}

TEST_CASE("current away from the static gauge") {
  ModelParams p = fixture("quadratic.cfg");
  p.epsilon = 0.5;
  p.alpha2 = 0.1;
  CHECK_FALSE(static_gauge(p));
  try {
    charge_density(0.5, p);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kGaugeNotFixed);
  }
  const Current j = current(0.5, p);
  CHECK(j.j3 == 0.0);
  CHECK(j.j0 > 0.0);
  CHECK(charge_density_from_current(0.5, p) >= 0.0);
}

TEST_CASE("charge density scaling") {
  ModelParams p = fixture("quadratic.cfg");
  p.R1 = 0.0;
  p.R2 = 0.0;
  const double xi_c = p.xi_c;
  const double alpha = alpha_beta_gamma(xi_c, p).alpha;
  CHECK(charge_density(xi_c, p) ==
        doctest::Approx(4 * p.alpha1 * p.alpha1 * std::exp(-alpha)).epsilon(1e-14));
  ModelParams q = p;
  q.alpha1 *= 2;
  q.alpha2 *= 2;
  CHECK(charge_density(0.4, q) == doctest::Approx(4 * charge_density(0.4, p)).epsilon(1e-14));
}

TEST_CASE("observable record") {
  const ModelParams p = fixture("power3.cfg");
  const ObservableRecord r = observables_at(0.6, p);
  const MetricPoint mp = alpha_beta_gamma(0.6, p);
  CHECK(r.S == invariant_S(0.6, p));
  CHECK(r.f == r.T00 * std::exp(mp.alpha + 2 * mp.beta) * std::sin(p.theta));
  CHECK(r.q >= 0.0);
  CHECK(r.j3 == 0.0);
}

TEST_CASE("totals") {
  const ModelParams lin = fixture("linear.cfg");
  CHECK(total_energy(lin, 1e-10).value == 0.0);

  const ModelParams p = fixture("quadratic.cfg");
  const auto coarse = total_energy(p, 1e-8);
  const auto fine = total_energy(p, 5e-9);
  CHECK(coarse.value > 0.0);
  CHECK(std::abs(fine.value - coarse.value) <= coarse.error_bound + 1e-8 * std::abs(coarse.value));

  // Independent Simpson rule over the same guarded window.
  const Window w = valid_window(p);
  const double simpson = oracle::simpson([&](double x) { return energy_density_invariant(x, p); }, w.lo, w.hi);
  CHECK(oracle::relative(fine.value, simpson) < 1e-6);

  const auto q = total_charge(p, 1e-10);
  CHECK(q.value > 0.0);
}

TEST_CASE("divergent integrals are surfaced as a verdict") {
  ModelParams p = fixture("quadratic.cfg");
  p.h = 0.0;
  p.xi1 = -0.5;
  const DomainIntegral d =
      integrate_domain([&](double x) { return 1.0 / std::pow(std::abs(x - 0.5), 1.5); }, p, 1e-10);
  CHECK(d.divergent);
  const DomainIntegral c =
      integrate_domain([&](double x) { return 1.0 / std::sqrt(std::abs(x - 0.5)); }, p, 1e-10);
  CHECK_FALSE(c.divergent);
  const double exact = 2 * std::sqrt(0.5) + 2 * std::sqrt(0.5);
  CHECK(std::abs(c.result.value + c.tail_estimate - exact) < 1e-3 * exact);
}

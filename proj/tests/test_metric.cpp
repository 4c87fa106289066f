#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nlspinor/config.hpp"
#include "nlspinor/error.hpp"
#include "nlspinor/metric.hpp"
#include "oracles.hpp"

using namespace nlspinor;

namespace {

ModelParams make(double G, double h, double xi1) {
  ModelParams p;
  p.G = G;
  p.h = h;
  p.xi1 = xi1;
  return p;
}

}  // namespace

TEST_CASE("kernel branches") {
  CHECK(liouville_T(0.0, 2.0) == 2.0);
  CHECK(liouville_T(1.0, 0.0) == 0.0);
  CHECK(std::abs(liouville_T(1e-8, 1.0) - liouville_T(0.0, 1.0)) < 1e-12);
  CHECK(std::abs(liouville_T(-1e-8, 1.0) - liouville_T(0.0, 1.0)) < 1e-12);
  CHECK(liouville_T(-2.0, 0.3) == doctest::Approx(std::sin(-0.6) / -2.0).epsilon(1e-15));
  CHECK(liouville_T(-2.0, 0.3) == doctest::Approx(std::sin(0.6) / 2.0).epsilon(1e-15));
}

TEST_CASE("kernel derivatives match finite differences") {
  for (double h : {-1.3, 0.0, 0.7}) {
    for (double x : {0.2, 0.9, 1.6}) {
      const LiouvilleKernel k = liouville_kernel(h, x);
      auto T = [h](double y) { return liouville_T(h, y); };
      auto dT = [h](double y) { return liouville_kernel(h, y).dT; };
      CHECK(k.dT == doctest::Approx(oracle::derivative(T, x, 1e-3)).epsilon(1e-10));
      CHECK(k.d2T == doctest::Approx(oracle::derivative(dT, x, 1e-3)).epsilon(1e-10));
    }
  }
}

TEST_CASE("coordinate condition and proportionality") {
  for (double G : {0.5, 1.0, 3.0}) {
    for (double h : {-1.0, 0.0, 1.0}) {
      const ModelParams p = make(G, h, 1.0);
      for (double xi : window_grid(valid_window(p), 50)) {
        const MetricPoint mp = alpha_beta_gamma(xi, p);
        CHECK(std::abs(mp.alpha - 2 * mp.beta - mp.gamma) < 1e-12);
        CHECK(std::abs(mp.beta - p.beta_ratio() * mp.alpha) < 1e-12);
        CHECK(std::abs(mp.gamma - p.gamma_ratio() * mp.alpha) < 1e-12);
        CHECK(mp.alpha == doctest::Approx(oracle::alpha_closed(xi, G, h, 1.0)).epsilon(1e-13));
        CHECK(mp.g00 > 0.0);
        CHECK(mp.g11 < 0.0);
        CHECK(mp.g22 < 0.0);
        CHECK(mp.g33 == doctest::Approx(mp.g22 * std::pow(std::sin(p.theta), 2)).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("the printed beta form agrees with the proportional form") {
  for (double G : {0.25, 1.0, 7.0}) {
    const ModelParams p = make(G, 0.4, 0.8);
    const MetricPoint mp = alpha_beta_gamma(0.37, p);
    const double L = liouville_log(0.37, p);
    CHECK(mp.beta == doctest::Approx(p.A() / 4 * (1 + 2 / G) * L).epsilon(1e-13));
    CHECK(mp.gamma == doctest::Approx(p.A() / 4 * L).epsilon(1e-13));
  }
}

TEST_CASE("analytic derivatives match finite differences") {
  const ModelParams p = make(1.0, 0.0, 1.0);
  auto alpha = [&](double x) { return alpha_beta_gamma(x, p).alpha; };
  const double fd = (alpha(0.5 + 1e-5) - alpha(0.5 - 1e-5)) / 2e-5;
  CHECK(oracle::relative(alpha_beta_gamma(0.5, p).d_alpha, fd) < 1e-8);

  for (double h : {-0.8, 0.6}) {
    const ModelParams q = make(2.0, h, 0.6);
    for (double xi : {0.1, 0.45, 0.9}) {
      const MetricPoint mp = alpha_beta_gamma(xi, q);
      auto beta = [&](double x) { return alpha_beta_gamma(x, q).beta; };
      auto gamma = [&](double x) { return alpha_beta_gamma(x, q).gamma; };
      auto d_gamma = [&](double x) { return alpha_beta_gamma(x, q).d_gamma; };
      CHECK(oracle::relative(mp.d_beta, oracle::derivative(beta, xi, 1e-3)) < 1e-9);
      CHECK(oracle::relative(mp.d_gamma, oracle::derivative(gamma, xi, 1e-3)) < 1e-9);
      CHECK(oracle::relative(mp.d2_gamma, oracle::derivative(d_gamma, xi, 1e-3)) < 1e-9);
    }
  }
}

TEST_CASE("Liouville equation holds on every branch") {
  for (double G : {0.5, 1.0, 3.0}) {
    for (double h : {-1.0, 0.0, 1.0}) {
      const ModelParams p = make(G, h, 1.0);
      for (double xi : window_grid(valid_window(p), 200)) {
        const MetricPoint mp = alpha_beta_gamma(xi, p);
        const double source = std::exp(2 * mp.beta + 2 * mp.gamma);
        CHECK(std::abs(mp.d2_beta - mp.d2_gamma - source) < 1e-9 * std::max(1.0, source));
      }
    }
  }
}

TEST_CASE("unit point of the logarithm") {
  ModelParams p = make(1.0, 0.0, 1.0);
  // G T^2 = A with T = xi + xi1.
  const double xi = std::sqrt(p.A() / p.G) - p.xi1 + 2.0;
  p.xi1 -= 2.0;
  const MetricPoint mp = alpha_beta_gamma(xi, p);
  CHECK(std::abs(mp.alpha) < 1e-15);
  CHECK(mp.g00 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mp.g22 == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(invariant_S(xi, p) == doctest::Approx(p.C).epsilon(1e-15));
}

TEST_CASE("singular points are reported with their coordinate") {
  const ModelParams p = make(1.0, 0.0, -0.5);
  try {
    alpha_beta_gamma(0.5, p);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSingularPoint);
    CHECK(e.value() == 0.5);
  }
}

TEST_CASE("singularity locator for the oscillating branch") {
  const ModelParams p = make(1.0, -2.0, 0.3);
  const auto s = singularities(p, -1.0, 5.0);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == doctest::Approx(-0.3));
  for (int k = 1; k <= 3; ++k) {
    CHECK(std::abs(s[k] - (k * std::numbers::pi / 2 - 0.3)) < 1e-10);
    CHECK(std::abs(liouville_T(p.h, s[k] + p.xi1)) < 1e-12);
  }
}

TEST_CASE("valid window ends at xi_c and avoids singularities") {
  ModelParams p = make(1.0, -4.0, 0.2);
  p.xi_c = 2.0;
  const Window w = valid_window(p);
  CHECK(w.hi == 2.0);
  CHECK(w.lo == doctest::Approx(2 * std::numbers::pi / 4 - 0.2 + p.singular_guard).epsilon(1e-14));
  CHECK(singularities(p, w.lo, w.hi).empty());

  const ModelParams q = make(1.0, 0.5, 1.0);
  const Window v = valid_window(q);
  CHECK(v.lo == q.singular_guard);
  CHECK(v.hi == q.xi_c);
}

TEST_CASE("evaluation grid drops points near singularities") {
  ModelParams p = make(1.0, 0.0, -0.5);
  p.singular_guard = 1e-3;
  const auto full = evaluation_grid(make(1.0, 0.0, 1.0), 201);
  const auto cut = evaluation_grid(p, 201);
  CHECK(full.size() == 201);
  CHECK(cut.size() < full.size());
  for (double xi : cut) CHECK(std::abs(xi - 0.5) >= p.singular_guard);
}

TEST_CASE("invariant S") {
  ModelParams p = make(1.0, 0.3, 1.0);
  p.C = 2.0;
  ModelParams q = p;
  q.C = 4.0;
  CHECK(invariant_S(0.4, q) / invariant_S(0.4, p) == 2.0);
  for (double xi : window_grid(valid_window(p), 100)) {
    const MetricPoint mp = alpha_beta_gamma(xi, p);
    const double S = invariant_S(xi, p);
    CHECK(S > 0.0);
    double distance = 1.0;
    for (double s : singularities(p, xi - 1.0, xi + 1.0)) distance = std::min(distance, std::abs(xi - s));
    const double step = 1e-3 * distance;
    const double dS = oracle::derivative([&](double x) { return invariant_S(x, p); }, xi, step);
    CHECK(std::abs(dS + mp.d_alpha * S) / std::max(1.0, std::abs(S)) < 1e-8);
  }
}

TEST_CASE("closed form of dS/dxi") {
  ModelParams p;
  p.G = 1;
  p.C = 1;
  p.m = 0;
  CHECK(std::abs(dS_dxi_closed(1.0, p)) == doctest::Approx(7 / std::sqrt(15.0)).epsilon(1e-15));
  CHECK(dS_dxi_closed(1.0, p) < 0.0);
  p.sign_dS = 1;
  CHECK(dS_dxi_closed(1.0, p) > 0.0);

  p.m = 1;
  p.kappa = 0.5;
  p.C = 1;
  try {
    dS_dxi_closed(4.0, p);  // 4 - 0.5 * 4 * ... with L_N = 0: 4 - 2 = 2 > 0
  } catch (const Error&) {
    FAIL("radicand is positive here");
  }
  p.nonlinearity = Quadratic{-2.0};
  CHECK(dS_dxi_radicand(1.0, p) < 0.0);
  try {
    dS_dxi_closed(1.0, p);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNegativeRadicand);
    CHECK(e.value() == dS_dxi_radicand(1.0, p));
  }
}

TEST_CASE("shifting xi and xi1 together leaves the geometry unchanged") {
  const ModelParams p = make(1.5, -0.7, 0.9);
  ModelParams q = p;
  q.xi1 = p.xi1 - 0.2;
  for (double xi : {0.1, 0.5, 0.8}) {
    const MetricPoint a = alpha_beta_gamma(xi, p);
    const MetricPoint b = alpha_beta_gamma(xi + 0.2, q);
    CHECK(a.alpha == doctest::Approx(b.alpha).epsilon(1e-12));
    CHECK(a.d2_beta == doctest::Approx(b.d2_beta).epsilon(1e-12));
  }
}

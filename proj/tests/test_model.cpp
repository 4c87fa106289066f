#include <cmath>
#include <random>

#include "doctest.h"
#include "nlspinor/error.hpp"
#include "nlspinor/model.hpp"
#include "oracles.hpp"

using namespace nlspinor;

namespace {

bool has_violation(const ValidationResult& r, const std::string& field) {
  for (const auto& v : r.violations) {
    if (v.field == field) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("nonlinear term values") {
  CHECK(nonlinear_term(Quadratic{2.0}, 3.0) == 18.0);
  CHECK(nonlinear_term_prime(Quadratic{2.0}, 3.0) == 12.0);
  CHECK(nonlinear_term(Linear{}, 7.5) == 0.0);
  CHECK(nonlinear_term_prime(Linear{}, 7.5) == 0.0);
  CHECK(nonlinear_term(Power{1.0, 3.0}, 2.0) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(nonlinear_term_prime(Power{1.0, 3.0}, 2.0) == doctest::Approx(12.0).epsilon(1e-15));
}

TEST_CASE("negative S keeps the sign for integer exponents") {
  CHECK(nonlinear_term(Power{1.0, 3.0}, -2.0) == doctest::Approx(-8.0).epsilon(1e-15));
  CHECK(nonlinear_term_prime(Power{1.0, 3.0}, -2.0) == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(nonlinear_term(Power{1.0, 4.0}, -2.0) == doctest::Approx(16.0).epsilon(1e-15));
}

TEST_CASE("non-integer power of a negative invariant is rejected") {
  try {
    nonlinear_term(Power{1.0, 2.5}, -1.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonIntegerPowerOfNegative);
  }
  CHECK_THROWS_AS(nonlinear_term_prime(Power{1.0, 2.5}, -1.0), Error);
}

TEST_CASE("derivative of the nonlinear term matches finite differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.05, 5.0);
  const Nonlinearity kinds[] = {Linear{}, Quadratic{0.7}, Power{1.3, 3.0}, Power{0.4, 4.5}};
  for (const auto& nl : kinds) {
    for (int i = 0; i < 20; ++i) {
      const double S = dist(rng);
      const double step = 1e-6 * std::max(1.0, S);
      const double fd = (nonlinear_term(nl, S + step) - nonlinear_term(nl, S - step)) / (2 * step);
      const double exact = nonlinear_term_prime(nl, S);
      CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("default parameters validate") {
  ModelParams p;
  p.G = 1;
  p.kappa = 0.1;
  p.m = 1;
  p.C = 1;
  CHECK(validate(p).ok());
}

TEST_CASE("validation names the offending field") {
  ModelParams p;
  p.xi1 = 0.0;
  auto r = validate(p);
  REQUIRE_FALSE(r.ok());
  CHECK(has_violation(r, "xi1"));
  CHECK(r.violations.front().message == "xi1 must be nonzero");

  p = ModelParams{};
  p.C = 1;
  p.kappa = 1;
  p.m = 2;
  r = validate(p);
  CHECK(has_violation(r, "C,kappa,m"));

  p = ModelParams{};
  p.G = -1;
  p.epsilon = 0;
  p.theta = 0;
  p.nonlinearity = Power{1.0, 2.0};
  r = validate(p);
  CHECK(has_violation(r, "G"));
  CHECK(has_violation(r, "epsilon"));
  CHECK(has_violation(r, "theta"));
  CHECK(has_violation(r, "n"));
}

TEST_CASE("validation never modifies and warns on a non-positive coupling") {
  ModelParams p;
  p.nonlinearity = Quadratic{-1.0};
  const auto r = validate(p);
  CHECK(r.ok());
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].field == "lambda");
  CHECK(std::get<Quadratic>(p.nonlinearity).lambda == -1.0);
}

TEST_CASE("derived constants") {
  for (double G : {1e-3, 0.5, 1.0, 3.0, 100.0}) {
    ModelParams p;
    p.G = G;
    CHECK(p.A() > 0.0);
    CHECK(p.A() < 1.0);
    CHECK(p.a_exp() > 0.0);
    CHECK(p.a_exp() < 1.0);
    CHECK(p.beta_ratio() * 2 + p.gamma_ratio() == doctest::Approx(1.0).epsilon(1e-15));
  }
  ModelParams p;
  p.G = 1e-9;
  CHECK(p.a_exp() == doctest::Approx(1.0).epsilon(1e-6));
  p.G = 1e9;
  CHECK(p.a_exp() == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  p.approx_a_one = true;
  CHECK(p.a_used() == 1.0);
  p.approx_a_one = false;
  CHECK(p.a_used() == p.a_exp());
}

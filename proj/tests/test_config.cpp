#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "nlspinor/config.hpp"
#include "oracles.hpp"

using namespace nlspinor;

TEST_CASE("format_real round-trips") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(mantissa(rng), exponent(rng));
    CHECK(std::stod(format_real(x)) == x);
  }
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(-2.0) == "-2");
  CHECK(format_real(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("parse flat key-value files") {
  const auto c = parse_config(
      "# comment\n"
      "G = 3   # trailing\n"
      "nonlinearity = power\n"
      "n = 4\n"
      "lambda = 0.25\n"
      "approx_a_one = false\n"
      "sign_dS = 1\n"
      "anchor = 0.3\n");
  CHECK(c.params.G == 3.0);
  const auto* pw = std::get_if<Power>(&c.params.nonlinearity);
  REQUIRE(pw != nullptr);
  CHECK(pw->n == 4.0);
  CHECK(pw->lambda == 0.25);
  CHECK_FALSE(c.params.approx_a_one);
  CHECK(c.params.sign_dS == 1);
  REQUIRE(c.anchor.has_value());
  CHECK(*c.anchor == 0.3);
}

TEST_CASE("malformed files are rejected") {
  CHECK_THROWS_AS(parse_config("bogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("G = 1\nG = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("G = one\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("G 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("nonlinearity = cubic\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("nonlinearity = power\nlambda = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("sign_dS = 0\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("serialized configs parse back to the same entries") {
  for (const char* name : {"quadratic.cfg", "linear.cfg", "linear_m0.cfg", "power3.cfg", "power4.cfg"}) {
    const auto c = load_config(oracle::fixture(name));
    const auto again = parse_config(serialize_config(c));
    CHECK(config_entries(again) == config_entries(c));
    CHECK(serialize_config(again, "# ") == serialize_config(c, "# "));
  }
}

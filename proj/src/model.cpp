#include "nlspinor/model.hpp"

#include <cmath>
#include <sstream>

#include "nlspinor/error.hpp"

namespace nlspinor {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

// S^p, sign-preserving for integer p and negative S.
double signed_pow(double S, double p) {
  if (S < 0.0 && !is_integer(p)) {
    throw Error(ErrorCode::kNonIntegerPowerOfNegative,
                "S^n with S < 0 requires integer n", S);
  }
  return std::pow(S, p);
}

}  // namespace

double nonlinear_term(const Nonlinearity& nl, double S) {
  return std::visit(Overloaded{
                        [](const Linear&) { return 0.0; },
                        [S](const Quadratic& q) { return q.lambda * S * S; },
                        [S](const Power& p) { return p.lambda * signed_pow(S, p.n); },
                    },
                    nl);
}

double nonlinear_term_prime(const Nonlinearity& nl, double S) {
  return std::visit(Overloaded{
                        [](const Linear&) { return 0.0; },
                        [S](const Quadratic& q) { return 2.0 * q.lambda * S; },
                        [S](const Power& p) {
                          return p.n * p.lambda * signed_pow(S, p.n - 1.0);
                        },
                    },
                    nl);
}

double power_exponent(const Nonlinearity& nl) {
  return std::visit(Overloaded{
                        [](const Linear&) { return 0.0; },
                        [](const Quadratic&) { return 2.0; },
                        [](const Power& p) { return p.n; },
                    },
                    nl);
}

double coupling(const Nonlinearity& nl) {
  return std::visit(Overloaded{
                        [](const Linear&) { return 0.0; },
                        [](const Quadratic& q) { return q.lambda; },
                        [](const Power& p) { return p.lambda; },
                    },
                    nl);
}

std::string kind_name(const Nonlinearity& nl) {
  return std::visit(Overloaded{
                        [](const Linear&) { return std::string("linear"); },
                        [](const Quadratic&) { return std::string("quadratic"); },
                        [](const Power&) { return std::string("power"); },
                    },
                    nl);
}

std::string ValidationResult::describe() const {
  std::ostringstream out;
  for (const auto& v : violations) out << v.field << ": " << v.message << '\n';
  return out.str();
}

ValidationResult validate(const ModelParams& p) {
  ValidationResult result;
  auto fail = [&](std::string field, std::string message) {
    result.violations.push_back({std::move(field), std::move(message)});
  };
  auto warn = [&](std::string field, std::string message) {
    result.warnings.push_back({std::move(field), std::move(message)});
  };
  auto finite = [&](const char* field, double v) {
    if (!std::isfinite(v)) fail(field, "must be finite");
    return std::isfinite(v);
  };

  if (finite("G", p.G) && p.G <= 0.0) fail("G", "G must be positive");
  finite("kappa", p.kappa);
  if (finite("m", p.m) && p.m < 0.0) fail("m", "m must be non-negative");
  if (finite("C", p.C)) {
    if (p.C == 0.0) fail("C", "C must be nonzero");
    else if (p.C < 0.0) warn("C", "negative C: phase functions are undefined");
  }
  finite("h", p.h);
  if (finite("xi1", p.xi1) && p.xi1 == 0.0) fail("xi1", "xi1 must be nonzero");
  if (finite("xi_c", p.xi_c) && p.xi_c <= 0.0) fail("xi_c", "xi_c must be positive");
  if (finite("theta", p.theta) && !(p.theta > 0.0 && p.theta < std::numbers::pi)) {
    fail("theta", "theta must lie in (0, pi)");
  }
  if (finite("epsilon", p.epsilon) && !(p.epsilon > 0.0 && p.epsilon <= 1.0)) {
    fail("epsilon", "epsilon must lie in (0, 1]");
  }
  finite("alpha1", p.alpha1);
  finite("alpha2", p.alpha2);
  finite("R1", p.R1);
  finite("R2", p.R2);
  if (std::isfinite(p.C) && std::isfinite(p.kappa) && std::isfinite(p.m) &&
      !(1.0 - p.C * p.kappa * p.m > 0.0)) {
    fail("C,kappa,m", "1 - C*kappa*m must be positive");
  }
  if (p.sign_dS != 1 && p.sign_dS != -1) fail("sign_dS", "sign_dS must be +1 or -1");
  if (!(p.singular_guard > 0.0) || !std::isfinite(p.singular_guard)) {
    fail("singular_guard", "singular_guard must be positive");
  }

  const double lambda = coupling(p.nonlinearity);
  if (!std::isfinite(lambda)) {
    fail("lambda", "must be finite");
  } else if (!std::holds_alternative<Linear>(p.nonlinearity) && lambda <= 0.0) {
    warn("lambda", "lambda <= 0: localization results assume lambda > 0");
  }
  if (const auto* pw = std::get_if<Power>(&p.nonlinearity)) {
    if (!(pw->n > 2.0) || !std::isfinite(pw->n)) fail("n", "power nonlinearity requires n > 2");
  }
  return result;
}

}  // namespace nlspinor

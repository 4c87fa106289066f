#pragma once

#include <numbers>
#include <string>
#include <variant>
#include <vector>

namespace nlspinor {

// Self-interaction L_N(S) of the spinor field.
struct Linear {};
struct Quadratic {
  double lambda = 0.0;
};
struct Power {
  double lambda = 0.0;
  double n = 3.0;
};

using Nonlinearity = std::variant<Linear, Quadratic, Power>;

/// L_N(S). Throws kNonIntegerPowerOfNegative for S < 0 with non-integer n.
double nonlinear_term(const Nonlinearity& nl, double S);
/// dL_N/dS.
double nonlinear_term_prime(const Nonlinearity& nl, double S);

/// Exponent n of the power law; 0 for Linear, 2 for Quadratic.
double power_exponent(const Nonlinearity& nl);
/// Coupling lambda; 0 for Linear.
double coupling(const Nonlinearity& nl);
std::string kind_name(const Nonlinearity& nl);

// All physical and integration constants of one solution.
struct ModelParams {
  double G = 1.0;      // dimensionless coupling entering A = G/(G+1)
  double kappa = 0.1;  // Einstein constant
  double m = 1.0;      // spinor mass
  double C = 1.0;      // invariant amplitude, S = C exp(-alpha)
  double h = 0.0;      // Liouville branch constant
  double xi1 = 1.0;    // integration constant, nonzero
  double xi_c = 1.0;   // center of the field configuration
  double theta = std::numbers::pi / 2;
  double epsilon = 1.0;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double R1 = 0.0;
  double R2 = 0.0;
  Nonlinearity nonlinearity = Linear{};
  int sign_dS = -1;
  bool approx_a_one = true;
  double singular_guard = 1e-6;

  double A() const { return G / (G + 1.0); }
  double a_exp() const { return (4.0 + 2.0 * G) / (4.0 + 3.0 * G); }
  /// Exponent used by the dS/dxi closed form and the phase functions.
  double a_used() const { return approx_a_one ? 1.0 : a_exp(); }
  /// 3G^2 + 8G + 4.
  double D() const { return 3.0 * G * G + 8.0 * G + 4.0; }
  double beta_ratio() const { return (2.0 + G) / (4.0 + 3.0 * G); }
  double gamma_ratio() const { return G / (4.0 + 3.0 * G); }
};

struct Violation {
  std::string field;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  std::vector<Violation> warnings;

  bool ok() const { return violations.empty(); }
  std::string describe() const;
};

/// Checks every invariant of ModelParams; never modifies the input.
ValidationResult validate(const ModelParams& params);

}  // namespace nlspinor

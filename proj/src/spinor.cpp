#include "nlspinor/spinor.hpp"

#include <cmath>

#include "nlspinor/error.hpp"
#include "nlspinor/metric.hpp"
#include "nlspinor/numerics.hpp"

namespace nlspinor {
namespace {

void require(bool condition, const char* what, double value) {
  if (!condition) throw Error(ErrorCode::kDomain, what, value);
}

// sqrt(C eps (3G^2+8G+4)) / (4+3G): the a = 1 prefactor of the closed forms.
double closed_form_prefactor(const ModelParams& p) {
  return std::sqrt(p.C * p.epsilon * p.D()) / (4.0 + 3.0 * p.G);
}

PhasePair anchored(double F, double F_ref, const ModelParams& p) {
  const double delta = p.sign_dS * (F - F_ref);
  return {p.R1 + delta, p.R2 - delta};
}

bool is_integer(double x) { return std::floor(x) == x; }

}  // namespace

double coeff_B(double S, const ModelParams& p) {
  const double dS = dS_dxi_closed(S, p);
  if (dS == 0.0) throw Error(ErrorCode::kDivisionByZeroDerivative, "dS/dxi = 0 in B(S)", S);
  const double exponent = (2.0 + 2.0 * p.G) / (4.0 + 3.0 * p.G);
  const double cot = std::cos(p.theta) / std::sin(p.theta);
  return 0.5 * std::pow(p.C / S, exponent) * cot / dS;
}

double coeff_Q(double S, const ModelParams& p) {
  const double dS = dS_dxi_closed(S, p);
  if (dS == 0.0) throw Error(ErrorCode::kDivisionByZeroDerivative, "dS/dxi = 0 in Q(S)", S);
  return (p.C / S) * (nonlinear_term_prime(p.nonlinearity, S) - p.m) / dS;
}

double reference_S(const ModelParams& p) { return invariant_S(p.xi_c, p); }

double phase_integrand(double S, const ModelParams& p) {
  require(p.C > 0.0, "phase functions require C > 0", p.C);
  require(S > 0.0, "phase functions require S > 0", S);
  const double a = p.a_used();
  const double L = nonlinear_term(p.nonlinearity, S);
  const double radicand = std::pow(S, a) - std::pow(p.C, a) * p.kappa * (p.m * S - L);
  require(radicand > 0.0, "phase integrand radicand <= 0", S);
  const double prefactor = std::sqrt(std::pow(p.C, a) * p.epsilon * p.D()) / (4.0 + 3.0 * p.G);
  return prefactor * (nonlinear_term_prime(p.nonlinearity, S) - p.m) / (S * std::sqrt(radicand));
}

PhasePair N_general(double S, const ModelParams& p, double rel_tol) {
  const double S_ref = reference_S(p);
  phase_integrand(S, p);  // domain check at the far end
  numerics::QuadOptions options;
  options.abs_tol = 1e-300;
  options.rel_tol = rel_tol;
  const auto r = numerics::adaptive_quad([&](double s) { return phase_integrand(s, p); }, S_ref, S,
                                         options);
  if (!r.converged) throw Error(ErrorCode::kQuadratureFailure, "N_general did not converge", S);
  return anchored(r.value, 0.0, p);
}

double phase_antiderivative_linear(double S, const ModelParams& p) {
  const double u = 1.0 - p.C * p.kappa * p.m;
  require(p.C > 0.0, "N_linear requires C > 0", p.C);
  require(S > 0.0, "N_linear requires S > 0", S);
  require(u > 0.0, "N_linear requires 1 - C kappa m > 0", u);
  return 2.0 * p.m * std::sqrt(p.epsilon * p.C * p.D()) / ((4.0 + 3.0 * p.G) * std::sqrt(u * S));
}

double phase_antiderivative_quadratic(double S, const ModelParams& p) {
  const double lambda = coupling(p.nonlinearity);
  const double u = 1.0 - p.C * p.kappa * p.m;
  const double w = p.C * p.kappa * lambda;
  require(S > 0.0, "N_quadratic requires S > 0", S);
  require(lambda > 0.0, "N_quadratic requires lambda > 0", lambda);
  require(p.C > 0.0 && p.C * p.kappa > 0.0, "N_quadratic requires C > 0 and C kappa > 0", p.C);
  require(u > 0.0, "N_quadratic requires 1 - C kappa m > 0", u);

  const double root = std::sqrt(w * S * S + u * S);
  const double sw = std::sqrt(w);
  const double mass_term = 2.0 * p.m / (sw * S + root);
  const double log_term =
      2.0 * std::sqrt(lambda / (p.C * p.kappa)) * std::log1p(2.0 * w * S / u + 2.0 * sw * root / u);
  return closed_form_prefactor(p) * (mass_term + log_term);
}

double phase_antiderivative_power(double S, double n, const ModelParams& p) {
  const double lambda = coupling(p.nonlinearity);
  const double u = 1.0 - p.C * p.kappa * p.m;
  const double ck = p.C * p.kappa;
  const double w = ck * lambda;
  require(n > 2.0 && is_integer(n), "N_power requires integer n > 2", n);
  require(S > 0.0, "N_power requires S > 0", S);
  require(lambda > 0.0, "N_power requires lambda > 0", lambda);
  require(p.C > 0.0 && ck > 0.0, "N_power requires C > 0 and C kappa > 0", p.C);
  require(u > 0.0, "N_power requires 1 - C kappa m > 0", u);

  const double k = n - 1.0;
  const double beta_p = n / (2.0 * k);
  const double beta_q = 1.0 - 1.0 / (2.0 * k);
  const double wSk = w * std::pow(S, k);
  // The incomplete beta runs up to y(S) = u / (w S^(n-1) + u).
  const double y = u / (wSk + u);

  const double first = 2.0 * n / (ck * (n - 2.0)) * std::sqrt(w * std::pow(S, n - 2.0) + u / S);
  const double coefficient =
      std::pow(w / u, beta_p) / std::sqrt(w) * (n / (n - 2.0) * (1.0 / ck - p.m) - p.m);
  const double boundary = 2.0 * std::pow(y, beta_p) * std::pow(1.0 + u / wSk, 1.0 / (2.0 * k));
  const double beta = numerics::incomplete_beta(y, beta_p, beta_q);
  return closed_form_prefactor(p) * (first + coefficient * (beta - boundary));
}

PhasePair N_linear(double S, const ModelParams& p) {
  return anchored(phase_antiderivative_linear(S, p),
                  phase_antiderivative_linear(reference_S(p), p), p);
}

PhasePair N_quadratic(double S, const ModelParams& p) {
  return anchored(phase_antiderivative_quadratic(S, p),
                  phase_antiderivative_quadratic(reference_S(p), p), p);
}

PhasePair N_power(double S, double n, const ModelParams& p) {
  return anchored(phase_antiderivative_power(S, n, p),
                  phase_antiderivative_power(reference_S(p), n, p), p);
}

PhasePair phase_functions(double S, const ModelParams& p) {
  if (!p.approx_a_one) return N_general(S, p);
  if (std::holds_alternative<Linear>(p.nonlinearity)) return N_linear(S, p);
  if (std::holds_alternative<Quadratic>(p.nonlinearity)) return N_quadratic(S, p);
  return N_power(S, std::get<Power>(p.nonlinearity).n, p);
}

SpinorAmplitudes U_components(double N1, double N2, const ModelParams& p) {
  const double root_eps = std::sqrt(p.epsilon);
  const double root_rest = std::sqrt(1.0 - p.epsilon);
  const double k1 = (1.0 + root_rest) / root_eps;
  const double k2 = (-1.0 + root_rest) / root_eps;
  const Complex i(0.0, 1.0);

  SpinorAmplitudes a;
  a.N1 = N1;
  a.N2 = N2;
  a.U1 = p.alpha1 * (std::cosh(N1) - i * k1 * std::sinh(N1));
  a.U4 = p.alpha1 * (std::cosh(N1) + i * k1 * std::sinh(N1));
  a.U2 = p.alpha2 * (std::sinh(N2) - i * k2 * std::cosh(N2));
  a.U3 = p.alpha2 * (std::sinh(N2) + i * k2 * std::cosh(N2));
  return a;
}

SpinorAmplitudes V_components(double xi, const ModelParams& p) {
  const double alpha = alpha_beta_gamma(xi, p).alpha;
  const double S = p.C * std::exp(-alpha);
  const PhasePair N = phase_functions(S, p);
  SpinorAmplitudes a = U_components(N.N1, N.N2, p);
  a.at_xi = xi;
  a.V_scale = std::exp(-0.5 * alpha);
  return a;
}

double scalar_bilinear(const SpinorAmplitudes& a) {
  return std::norm(a.V1()) + std::norm(a.V2()) - std::norm(a.V3()) - std::norm(a.V4());
}

double bilinear_asymmetry(const SpinorAmplitudes& a) {
  return (std::conj(a.V1()) * a.V4() + std::conj(a.V2()) * a.V3()).imag();
}

}  // namespace nlspinor

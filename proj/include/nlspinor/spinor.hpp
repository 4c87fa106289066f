#pragma once

#include <complex>
#include <limits>

#include "nlspinor/model.hpp"

namespace nlspinor {

using Complex = std::complex<double>;

/// B(S) = (1/2) (C/S)^((2+2G)/(4+3G)) cot(theta) / (dS/dxi).
double coeff_B(double S, const ModelParams& params);
/// Q(S) = (C/S) (L_N'(S) - m) / (dS/dxi).
double coeff_Q(double S, const ModelParams& params);

struct PhasePair {
  double N1 = 0.0;
  double N2 = 0.0;
};

// Phase functions N1, N2 with dN1/dS = +sqrt(eps) Q and dN2/dS = -sqrt(eps) Q.
// Every variant is anchored at S_ref = S(xi_c): N1(S_ref) = R1, N2(S_ref) = R2.

/// S(xi_c), the anchor of all phase functions.
double reference_S(const ModelParams& params);

/// sqrt(C^a eps (3G^2+8G+4))/(4+3G) (L_N' - m) / (S sqrt(S^a - C^a kappa (m S - L_N)))
/// i.e. sign_dS * sqrt(eps) * Q(S).
double phase_integrand(double S, const ModelParams& params);

/// Quadrature of phase_integrand from S_ref to S. Valid for any nonlinearity
/// and for the exact exponent a. Throws kDomain if the radicand vanishes on
/// the path, kQuadratureFailure if the tolerance is not met.
PhasePair N_general(double S, const ModelParams& params, double rel_tol = 1e-13);

// Closed-form antiderivatives of phase_integrand (a = 1), unanchored.
double phase_antiderivative_linear(double S, const ModelParams& params);
double phase_antiderivative_quadratic(double S, const ModelParams& params);
double phase_antiderivative_power(double S, double n, const ModelParams& params);

/// 2m sqrt(eps C (3G^2+8G+4)) / ((4+3G) sqrt((1 - C kappa m) S)), anchored.
PhasePair N_linear(double S, const ModelParams& params);
/// lambda S^2 closed form, anchored. lambda is taken from params.nonlinearity.
PhasePair N_quadratic(double S, const ModelParams& params);
/// lambda S^n closed form through the incomplete beta function, anchored.
PhasePair N_power(double S, double n, const ModelParams& params);

/// Closed form matching params.nonlinearity when approx_a_one, N_general otherwise.
PhasePair phase_functions(double S, const ModelParams& params);

struct SpinorAmplitudes {
  Complex U1, U2, U3, U4;
  double N1 = 0.0;
  double N2 = 0.0;
  double at_xi = std::numeric_limits<double>::quiet_NaN();
  double V_scale = 1.0;  // e^{-alpha/2}

  Complex V1() const { return V_scale * U1; }
  Complex V2() const { return V_scale * U2; }
  Complex V3() const { return V_scale * U3; }
  Complex V4() const { return V_scale * U4; }
};

/// U1 = alpha1 [cosh N1 - i k1 sinh N1],  U4 = alpha1 [cosh N1 + i k1 sinh N1],
/// U2 = alpha2 [sinh N2 - i k2 cosh N2],  U3 = alpha2 [sinh N2 + i k2 cosh N2],
/// k1 = (1 + sqrt(1-eps))/sqrt(eps),  k2 = (-1 + sqrt(1-eps))/sqrt(eps).
SpinorAmplitudes U_components(double N1, double N2, const ModelParams& params);

/// V_rho(xi) = U_rho(S(xi)) e^{-alpha(xi)/2}.
SpinorAmplitudes V_components(double xi, const ModelParams& params);

/// |V1|^2 + |V2|^2 - |V3|^2 - |V4|^2.
double scalar_bilinear(const SpinorAmplitudes& amps);

/// Imaginary part of conj(V1) V4 + conj(V2) V3; zero when the assumed
/// relation conj(V1) V4 + conj(V2) V3 = conj(V3) V2 + conj(V4) V1 holds.
double bilinear_asymmetry(const SpinorAmplitudes& amps);

}  // namespace nlspinor

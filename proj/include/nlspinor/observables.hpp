#pragma once

#include <vector>

#include "nlspinor/metric.hpp"
#include "nlspinor/model.hpp"
#include "nlspinor/numerics.hpp"

namespace nlspinor {

/// T^0_0 = T^2_2 = T^3_3 = S L_N' - L_N.
double T00_of_S(double S, const Nonlinearity& nl);
/// T^1_1 = m S - L_N.
double T11_of_S(double S, const Nonlinearity& nl, double m);

/// sqrt(-^3g) = e^{alpha + 2 beta} sin(theta).
double volume_element(const MetricPoint& point, double theta);

/// f(xi) = T^0_0(S(xi)) e^{alpha + 2 beta} sin(theta), by composition.
double energy_density_invariant(double xi, const ModelParams& params);

/// Exponent c_n in f = lambda (n-1) C^n sin(theta) exp{c_n ln[A/(G T^2)]}:
/// c_n = (A/(4G)) [-n (4+3G) + 5G + 8]; c_2 = -A/4.
double energy_exponent(const ModelParams& params);

/// The same density from its closed form in ln[A/(G T^2)]; zero for Linear.
double energy_density_closed(double xi, const ModelParams& params);

struct Current {
  double j0 = 0.0, j1 = 0.0, j2 = 0.0, j3 = 0.0;
};

/// Contravariant current j^mu = psibar gamma^mu psi for the constructed
/// amplitudes, evaluated from its explicit component formulas.
Current current(double xi, const ModelParams& params);

/// True when eps = 1, alpha1 = alpha2 and R2 = -R1 (so N2 = -N1).
bool static_gauge(const ModelParams& params);

/// q = 4 a^2 e^{-alpha} cosh(2N). Throws kGaugeNotFixed outside the static gauge.
double charge_density(double xi, const ModelParams& params);

/// q = sqrt(j_0 j^0) = sqrt(g00) j^0 assembled from current(); any gauge.
double charge_density_from_current(double xi, const ModelParams& params);

struct ObservableRecord {
  double xi = 0.0;
  double S = 0.0;
  double T00 = 0.0;
  double T11 = 0.0;
  double f = 0.0;
  double j0 = 0.0, j1 = 0.0, j2 = 0.0, j3 = 0.0;
  double q = 0.0;
};

ObservableRecord observables_at(double xi, const ModelParams& params);

// ---- totals -----------------------------------------------------------------

struct DomainIntegral {
  numerics::QuadResult result;
  /// Running totals as the guard bands shrink toward each singular boundary
  /// (last entry equals result.value).
  std::vector<double> refinements;
  /// Estimate of what lies inside the final guard bands, from the geometric
  /// decay of the refinement increments.
  double tail_estimate = 0.0;
  bool divergent = false;
};

/// Integrates `density` over every singularity-free segment of (0, xi_c]
/// with relative tolerance `tol`; never throws for divergence.
DomainIntegral integrate_domain(const numerics::RealFunction& density,
                                const ModelParams& params, double tol);

/// E = int_0^{xi_c} T^0_0 sqrt(-^3g) dxi. Throws kDivergentIntegral or
/// kQuadratureFailure (value = partial estimate).
numerics::QuadResult total_energy(const ModelParams& params, double tol);

/// Q = int_0^{xi_c} q sqrt(-^3g) dxi with q from charge_density_from_current.
numerics::QuadResult total_charge(const ModelParams& params, double tol);

}  // namespace nlspinor

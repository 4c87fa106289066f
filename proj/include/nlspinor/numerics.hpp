#pragma once

#include <functional>

namespace nlspinor::numerics {

using RealFunction = std::function<double(double)>;

struct QuadResult {
  double value = 0.0;
  double error_bound = 0.0;
  long evaluations = 0;
  bool converged = false;
};

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  int max_intervals = 4000;
};

/// Central difference of order 1 or 2 (three-point stencils).
/// A non-positive step selects the default: cbrt(eps) * max(1, |x|) for the
/// first derivative and eps^(1/4) * max(1, |x|) for the second.
/// Throws kStencilOutOfDomain when f fails or is non-finite on the stencil.
double finite_diff(const RealFunction& f, double x, int order, double step = 0.0);

/// Globally adaptive Gauss-Kronrod (7, 15) quadrature. The interval with the
/// largest error estimate is bisected until the summed estimate meets
/// max(abs_tol, rel_tol * |value|). Endpoints are never evaluated, so
/// integrable endpoint singularities are handled by refinement toward them.
/// Non-convergence is reported through `converged`, not an exception; a
/// non-finite integrand value throws kQuadratureFailure.
QuadResult adaptive_quad(const RealFunction& f, double a, double b, const QuadOptions& options);
QuadResult adaptive_quad(const RealFunction& f, double a, double b, double tol);

/// Incomplete beta integral  int_0^upper y^(p-1) (1-y)^(q-1) dy  (not
/// regularized). Requires upper in [0, 1], p > 0, q > 0.
double incomplete_beta(double upper, double p, double q, double tol = 1e-14);

}  // namespace nlspinor::numerics

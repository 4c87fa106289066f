#pragma once

#include <vector>

#include "nlspinor/model.hpp"

namespace nlspinor {

// Background geometry ds^2 = e^{2 gamma} dt^2 - e^{2 alpha} dxi^2
//   - e^{2 beta} (dtheta^2 + sin^2 theta dphi^2),  xi = 1/r,
// from the closed-form Liouville solution. All derivatives are analytic.
struct MetricPoint {
  double xi = 0.0;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  double d_alpha = 0.0, d_beta = 0.0, d_gamma = 0.0;
  double d2_alpha = 0.0, d2_beta = 0.0, d2_gamma = 0.0;
  double g00 = 0.0, g11 = 0.0, g22 = 0.0, g33 = 0.0;
};

struct LiouvilleKernel {
  double T = 0.0;
  double dT = 0.0;
  double d2T = 0.0;
};

/// T(h, x): sinh(hx)/h for h > 0, x for h = 0, sin(hx)/h for h < 0
/// (the last taken literally; only T^2 enters the metric).
double liouville_T(double h, double x);
LiouvilleKernel liouville_kernel(double h, double x);

/// ln[A / (G T^2(h, xi + xi1))]. Throws kSingularPoint where T = 0.
double liouville_log(double xi, const ModelParams& params);

/// Throws kSingularPoint (value = xi) where T(h, xi + xi1) = 0.
MetricPoint alpha_beta_gamma(double xi, const ModelParams& params);

/// S(xi) = C exp(-alpha(xi)).
double invariant_S(double xi, const ModelParams& params);

/// dS/dxi = sign_dS (4+3G) S / sqrt(3G^2+8G+4) (C/S) sqrt((S/C)^a - kappa (mS - L_N)),
/// with a = 1 when approx_a_one. Throws kNegativeRadicand (value = radicand)
/// outside the solution's domain and kDomain when sign(S) != sign(C).
double dS_dxi_closed(double S, const ModelParams& params);

/// Radicand (S/C)^a - kappa (m S - L_N(S)) of the closed form above.
double dS_dxi_radicand(double S, const ModelParams& params);

// ---- domain handling --------------------------------------------------------

struct Window {
  double lo = 0.0;
  double hi = 0.0;
  double center() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

/// Zeros of T(h, xi + xi1) for xi in [lo, hi], ascending.
std::vector<double> singularities(const ModelParams& params, double lo, double hi);

/// Last singularity-free interval ending at xi_c, shrunk by the guard band
/// at a singular end (xi = 0 counts as singular). Throws kDomain if empty.
Window valid_window(const ModelParams& params);

/// n equally spaced points on [lo, hi] (n = 1 gives the midpoint).
std::vector<double> window_grid(const Window& window, int n);

/// n equally spaced points on [singular_guard, xi_c] with every point closer
/// than singular_guard to a singularity removed.
std::vector<double> evaluation_grid(const ModelParams& params, int n);

struct Segment {
  double lo = 0.0;  // guarded bounds
  double hi = 0.0;
  double lo_boundary = 0.0;  // raw singular point or 0
  double hi_boundary = 0.0;
  bool lo_singular = true;
  bool hi_singular = false;
};

/// Singularity-free pieces covering (0, xi_c] minus guard bands.
std::vector<Segment> integration_segments(const ModelParams& params);

}  // namespace nlspinor

#include "nlspinor/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlspinor/error.hpp"

namespace nlspinor {

double liouville_T(double h, double x) {
  if (h > 0.0) return std::sinh(h * x) / h;
  if (h < 0.0) return std::sin(h * x) / h;
  return x;
}

LiouvilleKernel liouville_kernel(double h, double x) {
  if (h > 0.0) return {std::sinh(h * x) / h, std::cosh(h * x), h * std::sinh(h * x)};
  if (h < 0.0) return {std::sin(h * x) / h, std::cos(h * x), -h * std::sin(h * x)};
  return {x, 1.0, 0.0};
}

double liouville_log(double xi, const ModelParams& p) {
  const double T = liouville_T(p.h, xi + p.xi1);
  if (T == 0.0) throw Error(ErrorCode::kSingularPoint, "T(h, xi + xi1) = 0", xi);
  const double ratio = p.A() / p.G;
  if (!(ratio > 0.0)) throw Error(ErrorCode::kNegativeLogArgument, "A/(G T^2) <= 0", xi);
  return std::log(ratio) - 2.0 * std::log(std::abs(T));
}

MetricPoint alpha_beta_gamma(double xi, const ModelParams& p) {
  const LiouvilleKernel k = liouville_kernel(p.h, xi + p.xi1);
  if (k.T == 0.0) throw Error(ErrorCode::kSingularPoint, "T(h, xi + xi1) = 0", xi);

  const double L = liouville_log(xi, p);
  const double dL = -2.0 * k.dT / k.T;
  const double d2L = -2.0 * (k.d2T * k.T - k.dT * k.dT) / (k.T * k.T);

  const double A = p.A();
  const double c_gamma = A / 4.0;
  const double c_beta = A / 4.0 * (1.0 + 2.0 / p.G);
  const double c_alpha = A / 2.0 * (1.5 + 2.0 / p.G);

  MetricPoint mp;
  mp.xi = xi;
  mp.alpha = c_alpha * L;
  mp.beta = c_beta * L;
  mp.gamma = c_gamma * L;
  mp.d_alpha = c_alpha * dL;
  mp.d_beta = c_beta * dL;
  mp.d_gamma = c_gamma * dL;
  mp.d2_alpha = c_alpha * d2L;
  mp.d2_beta = c_beta * d2L;
  mp.d2_gamma = c_gamma * d2L;
  mp.g00 = std::exp(2.0 * mp.gamma);
  mp.g11 = -std::exp(2.0 * mp.alpha);
  mp.g22 = -std::exp(2.0 * mp.beta);
  const double s = std::sin(p.theta);
  mp.g33 = mp.g22 * s * s;
  return mp;
}

double invariant_S(double xi, const ModelParams& p) {
  return p.C * std::exp(-alpha_beta_gamma(xi, p).alpha);
}

double dS_dxi_radicand(double S, const ModelParams& p) {
  if (S == 0.0 || (S > 0.0) != (p.C > 0.0)) {
    throw Error(ErrorCode::kDomain, "S must be nonzero with the sign of C", S);
  }
  return std::pow(S / p.C, p.a_used()) -
         p.kappa * (p.m * S - nonlinear_term(p.nonlinearity, S));
}

double dS_dxi_closed(double S, const ModelParams& p) {
  const double radicand = dS_dxi_radicand(S, p);
  if (radicand < 0.0) throw Error(ErrorCode::kNegativeRadicand, "dS/dxi radicand < 0", radicand);
  return p.sign_dS * (4.0 + 3.0 * p.G) * S / std::sqrt(p.D()) * (p.C / S) * std::sqrt(radicand);
}

std::vector<double> singularities(const ModelParams& p, double lo, double hi) {
  std::vector<double> out;
  auto keep = [&](double xi) {
    if (xi >= lo && xi <= hi) out.push_back(xi);
  };
  keep(-p.xi1);
  if (p.h < 0.0) {
    const double period = std::numbers::pi / std::abs(p.h);
    // x = xi + xi1 = k * period, k != 0
    const long k_lo = static_cast<long>(std::ceil((lo + p.xi1) / period));
    const long k_hi = static_cast<long>(std::floor((hi + p.xi1) / period));
    for (long k = k_lo; k <= k_hi; ++k) {
      if (k != 0) keep(k * period - p.xi1);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Window valid_window(const ModelParams& p) {
  const double guard = p.singular_guard;
  std::vector<double> points = singularities(p, 0.0, p.xi_c);
  points.push_back(0.0);
  std::sort(points.begin(), points.end());

  double hi = p.xi_c;
  for (double s : points) {
    if (std::abs(s - p.xi_c) < guard) hi = std::min(hi, s - guard);
  }
  double lo = 0.0;
  for (double s : points) {
    if (s < hi) lo = std::max(lo, s);
  }
  lo += guard;
  if (!(lo < hi)) throw Error(ErrorCode::kDomain, "no singularity-free window below xi_c", p.xi_c);
  return {lo, hi};
}

std::vector<double> window_grid(const Window& w, int n) {
  std::vector<double> grid;
  if (n <= 0) return grid;
  if (n == 1) return {w.center()};
  grid.reserve(n);
  for (int i = 0; i < n; ++i) {
    grid.push_back(i == n - 1 ? w.hi : w.lo + (w.hi - w.lo) * i / (n - 1));
  }
  return grid;
}

std::vector<double> evaluation_grid(const ModelParams& p, int n) {
  const std::vector<double> raw = window_grid({p.singular_guard, p.xi_c}, n);
  const std::vector<double> sing = singularities(p, 0.0, p.xi_c + p.singular_guard);
  std::vector<double> grid;
  for (double xi : raw) {
    const bool near = std::any_of(sing.begin(), sing.end(), [&](double s) {
      return std::abs(xi - s) < p.singular_guard;
    });
    if (!near) grid.push_back(xi);
  }
  return grid;
}

std::vector<Segment> integration_segments(const ModelParams& p) {
  const double guard = p.singular_guard;
  std::vector<double> breaks{0.0};
  for (double s : singularities(p, 0.0, p.xi_c)) {
    if (s > 0.0) breaks.push_back(s);
  }
  const bool end_singular = breaks.size() > 1 && std::abs(breaks.back() - p.xi_c) < guard;
  if (!end_singular) breaks.push_back(p.xi_c);

  std::vector<Segment> segments;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Segment s;
    s.lo_boundary = breaks[i];
    s.hi_boundary = breaks[i + 1];
    s.lo_singular = true;
    s.hi_singular = i + 2 < breaks.size() || end_singular;
    s.lo = s.lo_boundary + guard;
    s.hi = s.hi_singular ? s.hi_boundary - guard : s.hi_boundary;
    if (s.lo < s.hi) segments.push_back(s);
  }
  return segments;
}

}  // namespace nlspinor

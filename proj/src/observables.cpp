#include "nlspinor/observables.hpp"

#include <algorithm>
#include <cmath>

#include "nlspinor/error.hpp"
#include "nlspinor/spinor.hpp"

namespace nlspinor {

double T00_of_S(double S, const Nonlinearity& nl) {
  return S * nonlinear_term_prime(nl, S) - nonlinear_term(nl, S);
}

double T11_of_S(double S, const Nonlinearity& nl, double m) {
  return m * S - nonlinear_term(nl, S);
}

double volume_element(const MetricPoint& point, double theta) {
  return std::exp(point.alpha + 2.0 * point.beta) * std::sin(theta);
}

double energy_density_invariant(double xi, const ModelParams& p) {
  const MetricPoint mp = alpha_beta_gamma(xi, p);
  const double S = p.C * std::exp(-mp.alpha);
  return T00_of_S(S, p.nonlinearity) * volume_element(mp, p.theta);
}

double energy_exponent(const ModelParams& p) {
  if (std::holds_alternative<Quadratic>(p.nonlinearity)) return -p.A() / 4.0;
  const double n = power_exponent(p.nonlinearity);
  return p.A() / (4.0 * p.G) * (-n * (4.0 + 3.0 * p.G) + 5.0 * p.G + 8.0);
}

double energy_density_closed(double xi, const ModelParams& p) {
  if (std::holds_alternative<Linear>(p.nonlinearity)) return 0.0;
  const double n = power_exponent(p.nonlinearity);
  const double lambda = coupling(p.nonlinearity);
  const double amplitude = lambda * (n - 1.0) * std::pow(p.C, n) * std::sin(p.theta);
  return amplitude * std::exp(energy_exponent(p) * liouville_log(xi, p));
}

Current current(double xi, const ModelParams& p) {
  const MetricPoint mp = alpha_beta_gamma(xi, p);
  const double S = p.C * std::exp(-mp.alpha);
  const PhasePair N = phase_functions(S, p);

  const double root_eps = std::sqrt(p.epsilon);
  const double root_rest = std::sqrt(1.0 - p.epsilon);
  const double k1 = (1.0 + root_rest) / root_eps;
  const double k2 = (-1.0 + root_rest) / root_eps;
  const double a1 = p.alpha1 * p.alpha1;
  const double a2 = p.alpha2 * p.alpha2;
  const double c1 = std::cosh(N.N1), s1 = std::sinh(N.N1);
  const double c2 = std::cosh(N.N2), s2 = std::sinh(N.N2);

  Current j;
  j.j0 = 2.0 * std::exp(-mp.gamma - mp.alpha) *
         (a1 * (c1 * c1 + k1 * k1 * s1 * s1) + a2 * (s2 * s2 + k2 * k2 * c2 * c2));
  j.j1 = 2.0 * std::exp(-2.0 * mp.alpha) *
         (a1 * (c1 * c1 - k1 * k1 * s1 * s1) + a2 * (s2 * s2 - k2 * k2 * c2 * c2));
  j.j2 = 4.0 * std::exp(-mp.beta - mp.alpha) * (a1 * k1 * c1 * s1 - a2 * k2 * s2 * c2);
  j.j3 = 0.0;
  return j;
}

bool static_gauge(const ModelParams& p) {
  return p.epsilon == 1.0 && p.alpha1 == p.alpha2 && p.R2 == -p.R1;
}

double charge_density(double xi, const ModelParams& p) {
  if (!static_gauge(p)) {
    throw Error(ErrorCode::kGaugeNotFixed, "requires epsilon = 1, alpha1 = alpha2, R2 = -R1", xi);
  }
  const double alpha = alpha_beta_gamma(xi, p).alpha;
  const double N = phase_functions(p.C * std::exp(-alpha), p).N1;
  return 4.0 * p.alpha1 * p.alpha1 * std::exp(-alpha) * std::cosh(2.0 * N);
}

double charge_density_from_current(double xi, const ModelParams& p) {
  const MetricPoint mp = alpha_beta_gamma(xi, p);
  return std::sqrt(mp.g00) * current(xi, p).j0;
}

ObservableRecord observables_at(double xi, const ModelParams& p) {
  const MetricPoint mp = alpha_beta_gamma(xi, p);
  ObservableRecord r;
  r.xi = xi;
  r.S = p.C * std::exp(-mp.alpha);
  r.T00 = T00_of_S(r.S, p.nonlinearity);
  r.T11 = T11_of_S(r.S, p.nonlinearity, p.m);
  r.f = r.T00 * volume_element(mp, p.theta);
  const Current j = current(xi, p);
  r.j0 = j.j0;
  r.j1 = j.j1;
  r.j2 = j.j2;
  r.j3 = j.j3;
  r.q = std::sqrt(mp.g00) * j.j0;
  return r;
}

DomainIntegral integrate_domain(const numerics::RealFunction& density, const ModelParams& p,
                                double tol) {
  numerics::QuadOptions options;
  options.abs_tol = 1e-300;
  options.rel_tol = tol;

  DomainIntegral out;
  out.result.converged = true;
  auto add = [&](double a, double b) {
    if (!(a < b)) return 0.0;
    numerics::QuadResult r;
    try {
      r = numerics::adaptive_quad(density, a, b, options);
    } catch (const Error&) {
      out.divergent = true;
      return 0.0;
    }
    out.result.error_bound += r.error_bound;
    out.result.evaluations += r.evaluations;
    out.result.converged = out.result.converged && r.converged;
    return r.value;
  };

  const std::vector<Segment> segments = integration_segments(p);
  double total = 0.0;
  std::vector<double> increments;
  for (const Segment& s : segments) {
    // Start from the central half, then extend toward singular ends by
    // halving the remaining gap until it reaches the guard band.
    const double width = s.hi_boundary - s.lo_boundary;
    double gap = width / 4.0;
    double lo = s.lo_singular ? s.lo_boundary + gap : s.lo;
    double hi = s.hi_singular ? s.hi_boundary - gap : s.hi;
    total += add(lo, hi);
    out.refinements.push_back(total);
    const double guard = p.singular_guard;
    std::vector<double> segment_increments;
    while ((s.lo_singular && lo > s.lo) || (s.hi_singular && hi < s.hi)) {
      gap = std::max(gap / 2.0, guard);
      double step = 0.0;
      if (s.lo_singular && lo > s.lo) {
        const double next = std::max(s.lo_boundary + gap, s.lo);
        step += add(next, lo);
        lo = next;
      }
      if (s.hi_singular && hi < s.hi) {
        const double next = std::min(s.hi_boundary - gap, s.hi);
        step += add(hi, next);
        hi = next;
      }
      total += step;
      out.refinements.push_back(total);
      segment_increments.push_back(step);
    }
    // Increments of a convergent tail shrink geometrically; a ratio near or
    // above one means the integral grows without bound toward the boundary.
    const std::size_t k = segment_increments.size();
    if (k >= 3) {
      const double last = std::abs(segment_increments[k - 1]);
      const double prev = std::abs(segment_increments[k - 2]);
      const double scale = std::abs(total) * 1e-14 + 1e-300;
      if (last > scale && prev > scale) {
        const double ratio = last / prev;
        if (ratio >= 0.9) out.divergent = true;
        else out.tail_estimate += last * ratio / (1.0 - ratio);
      }
    }
  }
  out.result.value = total;
  if (out.divergent) out.result.converged = false;
  return out;
}

namespace {

numerics::QuadResult checked_total(const DomainIntegral& d, const char* what) {
  if (d.divergent) throw Error(ErrorCode::kDivergentIntegral, what, d.result.value);
  if (!d.result.converged) throw Error(ErrorCode::kQuadratureFailure, what, d.result.value);
  return d.result;
}

}  // namespace

numerics::QuadResult total_energy(const ModelParams& p, double tol) {
  return checked_total(
      integrate_domain([&](double xi) { return energy_density_invariant(xi, p); }, p, tol),
      "total energy");
}

numerics::QuadResult total_charge(const ModelParams& p, double tol) {
  return checked_total(integrate_domain(
                           [&](double xi) {
                             const MetricPoint mp = alpha_beta_gamma(xi, p);
                             return charge_density_from_current(xi, p) *
                                    volume_element(mp, p.theta);
                           },
                           p, tol),
                       "total charge");
}

}  // namespace nlspinor

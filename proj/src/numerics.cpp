#include "nlspinor/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "nlspinor/error.hpp"

namespace nlspinor::numerics {
namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the center.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

double eval_checked(const RealFunction& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw Error(ErrorCode::kQuadratureFailure, "non-finite integrand", x);
  }
  return y;
}

Panel gauss_kronrod(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = eval_checked(f, center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = eval_checked(f, center - dx) + eval_checked(f, center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

double finite_diff(const RealFunction& f, double x, int order, double step) {
  if (order != 1 && order != 2) {
    throw Error(ErrorCode::kDomain, "finite_diff order must be 1 or 2", order);
  }
  const double scale = std::max(1.0, std::abs(x));
  if (!(step > 0.0)) {
    const double eps = std::numeric_limits<double>::epsilon();
    step = (order == 1 ? std::cbrt(eps) : std::sqrt(std::sqrt(eps))) * scale;
  }
  auto at = [&](double t) {
    double y = 0.0;
    try {
      y = f(t);
    } catch (const Error& e) {
      throw Error(ErrorCode::kStencilOutOfDomain, e.what(), t);
    }
    if (!std::isfinite(y)) throw Error(ErrorCode::kStencilOutOfDomain, "non-finite value on stencil", t);
    return y;
  };
  const double lo = at(x - step);
  const double hi = at(x + step);
  if (order == 1) return (hi - lo) / (2.0 * step);
  return (hi - 2.0 * at(x) + lo) / (step * step);
}

QuadResult adaptive_quad(const RealFunction& f, double a, double b, const QuadOptions& options) {
  QuadResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  const double sign = b < a ? -1.0 : 1.0;
  if (b < a) std::swap(a, b);

  std::vector<Panel> panels{gauss_kronrod(f, a, b)};
  result.evaluations = 15;
  const double eps = std::numeric_limits<double>::epsilon();

  for (;;) {
    double value = 0.0;
    double error = 0.0;
    for (const auto& p : panels) {
      value += p.value;
      error += p.error;
    }
    result.value = sign * value;
    result.error_bound = error;
    const double target = std::max(options.abs_tol, options.rel_tol * std::abs(value));
    if (error <= target) {
      result.converged = true;
      break;
    }
    if (static_cast<int>(panels.size()) >= options.max_intervals) break;

    // Worst panel; ties resolve to the leftmost so the order is fixed.
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& l, const Panel& r) {
                                    return l.error < r.error || (l.error == r.error && l.a > r.a);
                                  });
    const double mid = 0.5 * (worst->a + worst->b);
    if (worst->b - worst->a <= 8.0 * eps * std::max(std::abs(worst->a), std::abs(worst->b)) ||
        mid <= worst->a || mid >= worst->b) {
      break;
    }
    const Panel left = gauss_kronrod(f, worst->a, mid);
    const Panel right = gauss_kronrod(f, mid, worst->b);
    result.evaluations += 30;
    *worst = left;
    panels.push_back(right);
  }
  return result;
}

QuadResult adaptive_quad(const RealFunction& f, double a, double b, double tol) {
  QuadOptions options;
  options.abs_tol = tol;
  return adaptive_quad(f, a, b, options);
}

double incomplete_beta(double upper, double p, double q, double tol) {
  if (!(upper >= 0.0 && upper <= 1.0) || !(p > 0.0) || !(q > 0.0)) {
    throw Error(ErrorCode::kDomain, "incomplete_beta requires upper in [0,1], p > 0, q > 0", upper);
  }
  if (upper == 0.0) return 0.0;

  QuadOptions options;
  options.abs_tol = tol;
  options.rel_tol = tol;

  // Left piece on [0, min(upper, 1/2)] with v = y^p, which removes y^(p-1):
  //   int y^(p-1) (1-y)^(q-1) dy = (1/p) int (1 - v^(1/p))^(q-1) dv.
  auto left_piece = [&](double x) {
    auto g = [p, q](double v) { return std::pow(1.0 - std::pow(v, 1.0 / p), q - 1.0); };
    const QuadResult r = adaptive_quad(g, 0.0, std::pow(x, p), options);
    if (!r.converged) throw Error(ErrorCode::kQuadratureFailure, "incomplete_beta left piece", x);
    return r.value / p;
  };
  if (upper <= 0.5) return left_piece(upper);

  // Right piece on [1/2, upper] in z = 1 - y and w = z^q, which removes (1-y)^(q-1).
  auto g = [p, q](double w) { return std::pow(1.0 - std::pow(w, 1.0 / q), p - 1.0); };
  const QuadResult r = adaptive_quad(g, std::pow(1.0 - upper, q), std::pow(0.5, q), options);
  if (!r.converged) throw Error(ErrorCode::kQuadratureFailure, "incomplete_beta right piece", upper);
  return left_piece(0.5) + r.value / q;
}

}  // namespace nlspinor::numerics

#include "nlspinor/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "nlspinor/config.hpp"
#include "nlspinor/error.hpp"
#include "nlspinor/numerics.hpp"
#include "nlspinor/spinor.hpp"

namespace nlspinor {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double max_of(std::initializer_list<double> values) {
  double m = 1.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

EquationResidual& add_equation(ResidualReport& report, std::string name, double tolerance,
                               bool gating = true) {
  EquationResidual eq;
  eq.name = std::move(name);
  eq.tolerance = tolerance;
  eq.gating = gating;
  report.equations.push_back(std::move(eq));
  return report.equations.back();
}

ResidualReport make_report(std::string suite, const std::vector<double>& grid) {
  ResidualReport report;
  report.suite = std::move(suite);
  report.grid = grid;
  // add_equation hands out references; no reallocation may follow.
  report.equations.reserve(16);
  return report;
}

void push(EquationResidual& eq, double xi, double r) {
  eq.xi.push_back(xi);
  eq.residual.push_back(r);
}

}  // namespace

double EquationResidual::max_abs() const {
  double m = 0.0;
  for (double r : residual) m = std::isnan(r) ? std::numeric_limits<double>::infinity() : std::max(m, std::abs(r));
  return m;
}

double EquationResidual::rms() const {
  if (residual.empty()) return 0.0;
  double sum = 0.0;
  for (double r : residual) sum += r * r;
  return std::sqrt(sum / residual.size());
}

bool ResidualReport::passed() const {
  return std::all_of(equations.begin(), equations.end(),
                     [](const EquationResidual& e) { return !e.gating || e.passed(); });
}

const EquationResidual& ResidualReport::equation(std::string_view name) const {
  for (const auto& e : equations) {
    if (e.name == name) return e;
  }
  throw std::out_of_range("no equation '" + std::string(name) + "' in suite " + suite);
}

std::string to_csv(const ResidualReport& report) {
  std::ostringstream out;
  out << "# suite = " << report.suite << '\n';
  out << "# passed = " << (report.passed() ? 1 : 0) << '\n';
  out << "# grid =";
  for (double x : report.grid) out << ' ' << format_real(x);
  out << '\n';
  for (const auto& e : report.equations) {
    out << "# equation = " << e.name << "; tolerance = " << format_real(e.tolerance)
        << "; gating = " << (e.gating ? 1 : 0) << "; max_abs = " << format_real(e.max_abs())
        << "; rms = " << format_real(e.rms()) << "; passed = " << (e.passed() ? 1 : 0) << '\n';
  }
  out << "xi,eq_name,residual\n";
  for (const auto& e : report.equations) {
    for (std::size_t i = 0; i < e.xi.size(); ++i) {
      out << format_real(e.xi[i]) << ',' << e.name << ',' << format_real(e.residual[i]) << '\n';
    }
  }
  return out.str();
}

ResidualReport report_from_csv(std::string_view text) {
  ResidualReport report;
  std::istringstream in{std::string(text)};
  std::string line;
  auto value_of = [](const std::string& field) {
    const auto eq = field.find('=');
    std::string v = field.substr(eq + 1);
    v.erase(0, v.find_first_not_of(' '));
    v.erase(v.find_last_not_of(' ') + 1);
    return v;
  };
  auto find_eq = [&](const std::string& name) -> EquationResidual& {
    for (auto& e : report.equations) {
      if (e.name == name) return e;
    }
    throw std::runtime_error("residual row for undeclared equation '" + name + "'");
  };
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# suite = ", 0) == 0) {
      report.suite = line.substr(10);
    } else if (line.rfind("# grid =", 0) == 0) {
      std::istringstream values(line.substr(8));
      std::string token;
      while (values >> token) report.grid.push_back(std::stod(token));
    } else if (line.rfind("# equation = ", 0) == 0) {
      EquationResidual e;
      std::istringstream fields(line.substr(2));
      std::string field;
      while (std::getline(fields, field, ';')) {
        const std::string key = field.substr(field.find_first_not_of(' '),
                                             field.find('=') - field.find_first_not_of(' '));
        const std::string v = value_of(field);
        if (key.rfind("equation", 0) == 0) e.name = v;
        else if (key.rfind("tolerance", 0) == 0) e.tolerance = std::stod(v);
        else if (key.rfind("gating", 0) == 0) e.gating = v == "1";
      }
      report.equations.push_back(std::move(e));
    } else if (line[0] == '#') {
      continue;
    } else if (!header_seen) {
      header_seen = true;
    } else {
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      EquationResidual& e = find_eq(line.substr(c1 + 1, c2 - c1 - 1));
      e.xi.push_back(std::stod(line.substr(0, c1)));
      e.residual.push_back(std::stod(line.substr(c2 + 1)));
    }
  }
  return report;
}

// ---- Liouville ----------------------------------------------------------------

ResidualReport liouville_suite(const ModelParams& p, const std::vector<double>& grid,
                               const SuiteTolerances& tol) {
  ResidualReport report = make_report("liouville", grid);
  auto& liouville = add_equation(report, "liouville", tol.geometric);
  auto& coordinate = add_equation(report, "coordinate_condition", tol.algebraic);
  auto& beta_ratio = add_equation(report, "beta_proportionality", tol.algebraic);
  auto& gamma_ratio = add_equation(report, "gamma_proportionality", tol.algebraic);

  for (double xi : grid) {
    const MetricPoint mp = alpha_beta_gamma(xi, p);
    const double source = std::exp(2.0 * mp.beta + 2.0 * mp.gamma);
    push(liouville, xi, (mp.d2_beta - mp.d2_gamma - source) / std::max(1.0, source));
    push(coordinate, xi, mp.alpha - 2.0 * mp.beta - mp.gamma);
    push(beta_ratio, xi, mp.beta - p.beta_ratio() * mp.alpha);
    push(gamma_ratio, xi, mp.gamma - p.gamma_ratio() * mp.alpha);
  }
  return report;
}

// ---- Einstein -----------------------------------------------------------------

namespace {

struct EinsteinComponents {
  double G00, G11, G22;
  double T00, T11, T22;
  double scale;
};

EinsteinComponents einstein_components(const MetricPoint& mp, const ModelParams& p) {
  const double e2a = std::exp(-2.0 * mp.alpha);
  const double e2b = std::exp(-2.0 * mp.beta);
  const double b1 = mp.d_beta, g1 = mp.d_gamma;
  EinsteinComponents c;
  c.G00 = e2a * (2.0 * mp.d2_beta - b1 * b1 - 2.0 * b1 * g1) - e2b;
  c.G11 = e2a * (b1 * b1 + 2.0 * b1 * g1) - e2b;
  c.G22 = e2a * (mp.d2_beta + mp.d2_gamma - b1 * b1 - 2.0 * b1 * g1);
  const double S = p.C * std::exp(-mp.alpha);
  c.T00 = T00_of_S(S, p.nonlinearity);
  c.T22 = c.T00;
  c.T11 = T11_of_S(S, p.nonlinearity, p.m);
  c.scale = max_of({e2b, e2a * b1 * b1, e2a * mp.d2_beta, p.kappa * c.T00, p.kappa * c.T11});
  return c;
}

}  // namespace

double einstein_11_residual(double xi, const ModelParams& p) {
  const MetricPoint mp = alpha_beta_gamma(xi, p);
  const double S = p.C * std::exp(-mp.alpha);
  const double k2 = (4.0 + 3.0 * p.G) * (4.0 + 3.0 * p.G) / p.D();
  const double lhs = mp.d_alpha * mp.d_alpha;
  const double bracket = std::exp(-p.a_exp() * mp.alpha) - p.kappa * T11_of_S(S, p.nonlinearity, p.m);
  const double rhs = k2 * std::exp(2.0 * mp.alpha) * bracket;
  return (lhs - rhs) / max_of({lhs, rhs});
}

ResidualReport einstein_suite(const ModelParams& p, const std::vector<double>& grid, double anchor,
                              const SuiteTolerances& tol) {
  ResidualReport report = make_report("einstein", grid);
  auto& identity = add_equation(report, "g00_minus_g22_identity", tol.geometric);
  auto& at_anchor = add_equation(report, "einstein_11_at_anchor", tol.quadrature);
  auto& r00 = add_equation(report, "einstein_00", tol.quadrature, false);
  auto& r11 = add_equation(report, "einstein_11", tol.quadrature, false);
  auto& r22 = add_equation(report, "einstein_22", tol.quadrature, false);

  for (double xi : grid) {
    const MetricPoint mp = alpha_beta_gamma(xi, p);
    const EinsteinComponents c = einstein_components(mp, p);
    const double e00 = c.G00 + p.kappa * c.T00;
    const double e22 = c.G22 + p.kappa * c.T22;
    const double liouville =
        mp.d2_beta - mp.d2_gamma - std::exp(2.0 * mp.beta + 2.0 * mp.gamma);
    push(identity, xi, (e00 - e22 - std::exp(-2.0 * mp.alpha) * liouville) / c.scale);
    push(r00, xi, e00 / c.scale);
    push(r11, xi, einstein_11_residual(xi, p));
    push(r22, xi, e22 / c.scale);
  }
  push(at_anchor, anchor, einstein_11_residual(anchor, p));
  return report;
}

// ---- Dirac --------------------------------------------------------------------

std::string_view to_string(DiracMode mode) {
  return mode == DiracMode::kEquatorial ? "equatorial" : "reduced";
}

namespace {

struct AmplitudeDerivatives {
  Complex U[4];
};

// Component-wise central differences of U_rho(S).
AmplitudeDerivatives amplitude_derivative(const std::function<SpinorAmplitudes(double)>& amps,
                                          double S, int order, double step) {
  AmplitudeDerivatives d;
  auto part = [&](int rho, bool imag) {
    return [&, rho, imag](double s) {
      const SpinorAmplitudes a = amps(s);
      const Complex u[4] = {a.U1, a.U2, a.U3, a.U4};
      return imag ? u[rho].imag() : u[rho].real();
    };
  };
  for (int rho = 0; rho < 4; ++rho) {
    d.U[rho] = Complex(numerics::finite_diff(part(rho, false), S, order, step),
                       numerics::finite_diff(part(rho, true), S, order, step));
  }
  return d;
}

}  // namespace

ResidualReport dirac_suite(const ModelParams& p, const std::vector<double>& grid, DiracMode mode,
                           const SuiteTolerances& tol) {
  const bool equatorial = mode == DiracMode::kEquatorial;
  if (equatorial && (std::abs(p.theta - std::numbers::pi / 2) > 1e-12 || p.epsilon != 1.0)) {
    throw Error(ErrorCode::kModeParameterMismatch,
                "equatorial mode requires theta = pi/2 and epsilon = 1", p.epsilon);
  }

  ResidualReport report = make_report("dirac", grid);
  const double first_tol = equatorial ? tol.dirac_equatorial : tol.quadrature;
  EquationResidual* u_eq[4] = {&add_equation(report, "u4_equation", first_tol),
                               &add_equation(report, "u3_equation", first_tol),
                               &add_equation(report, "u2_equation", first_tol),
                               &add_equation(report, "u1_equation", first_tol)};
  auto& second = add_equation(report, "second_order_u1_plus_u4", tol.quadrature);
  EquationResidual* v_eq[4] = {&add_equation(report, "v4_equation", tol.quadrature, false),
                               &add_equation(report, "v3_equation", tol.quadrature, false),
                               &add_equation(report, "v2_equation", tol.quadrature, false),
                               &add_equation(report, "v1_equation", tol.quadrature, false)};

  auto amps_at = [&](double s) {
    const PhasePair N = phase_functions(s, p);
    return U_components(N.N1, N.N2, p);
  };
  auto B_at = [&](double s) {
    return equatorial ? coeff_B(s, p) : std::sqrt(1.0 - p.epsilon) * coeff_Q(s, p);
  };
  const Complex i(0.0, 1.0);

  for (double xi : grid) {
    const double S = invariant_S(xi, p);
    const SpinorAmplitudes a = amps_at(S);
    const AmplitudeDerivatives d = amplitude_derivative(amps_at, S, 1, 1e-4 * std::abs(S));
    const double B = B_at(S);
    const double Q = coeff_Q(S, p);
    const Complex U1 = a.U1, U2 = a.U2, U3 = a.U3, U4 = a.U4;
    const Complex dU1 = d.U[0], dU2 = d.U[1], dU3 = d.U[2], dU4 = d.U[3];

    // dU4 - iB U4 - iQ U1,  dU3 + iB U3 - iQ U2,  dU2 - iB U2 + iQ U3,  dU1 + iB U1 + iQ U4
    const Complex lhs[4] = {dU4 - i * B * U4 - i * Q * U1, dU3 + i * B * U3 - i * Q * U2,
                            dU2 - i * B * U2 + i * Q * U3, dU1 + i * B * U1 + i * Q * U4};
    const double scale[4] = {
        max_of({std::abs(dU4) + std::abs(B * U4) + std::abs(Q * U1)}),
        max_of({std::abs(dU3) + std::abs(B * U3) + std::abs(Q * U2)}),
        max_of({std::abs(dU2) + std::abs(B * U2) + std::abs(Q * U3)}),
        max_of({std::abs(dU1) + std::abs(B * U1) + std::abs(Q * U4)})};
    for (int k = 0; k < 4; ++k) push(*u_eq[k], xi, std::abs(lhs[k]) / scale[k]);

    // Q U'' - Q' U' + Q (B^2 - Q^2) U = 0 for U = U1 + U4 (the equation times Q).
    const AmplitudeDerivatives dd = amplitude_derivative(amps_at, S, 2, 2e-4 * std::abs(S));
    const double dQ = numerics::finite_diff([&](double s) { return coeff_Q(s, p); }, S, 1,
                                            1e-4 * std::abs(S));
    const Complex U = U1 + U4;
    const Complex dU = dU1 + dU4;
    const Complex d2U = dd.U[0] + dd.U[3];
    const Complex r2 = Q * d2U - dQ * dU + Q * (B * B - Q * Q) * U;
    push(second, xi,
         std::abs(r2) / max_of({std::abs(Q * d2U) + std::abs(dQ * dU) +
                                std::abs(Q * (B * B - Q * Q) * U)}));

    // xi-space equations for V_rho with the true dS/dxi of the metric.
    const MetricPoint mp = alpha_beta_gamma(xi, p);
    auto v_at = [&](double x) { return V_components(x, p); };
    const SpinorAmplitudes v = v_at(xi);
    auto v_part = [&](int rho, bool imag) {
      return [&, rho, imag](double x) {
        const SpinorAmplitudes b = v_at(x);
        const Complex c[4] = {b.V1(), b.V2(), b.V3(), b.V4()};
        return imag ? c[rho].imag() : c[rho].real();
      };
    };
    Complex dV[4];
    for (int rho = 0; rho < 4; ++rho) {
      dV[rho] = Complex(numerics::finite_diff(v_part(rho, false), xi, 1),
                        numerics::finite_diff(v_part(rho, true), xi, 1));
    }
    const Complex V[4] = {v.V1(), v.V2(), v.V3(), v.V4()};
    const double half_da = 0.5 * mp.d_alpha;
    const double spin = 0.5 * std::exp(mp.alpha - mp.beta) * std::cos(p.theta) / std::sin(p.theta);
    const double mass = std::exp(mp.alpha) *
                        (nonlinear_term_prime(p.nonlinearity, S) - p.m);
    const Complex vl[4] = {
        dV[3] + half_da * V[3] - i * spin * V[3] - i * mass * V[0],
        dV[2] + half_da * V[2] + i * spin * V[2] - i * mass * V[1],
        -dV[1] - half_da * V[1] + i * spin * V[1] - i * mass * V[2],
        -dV[0] - half_da * V[0] - i * spin * V[0] - i * mass * V[3]};
    const int self[4] = {3, 2, 1, 0};
    const int other[4] = {0, 1, 2, 3};
    for (int k = 0; k < 4; ++k) {
      const double sc = max_of({std::abs(dV[self[k]]) + std::abs(half_da * V[self[k]]) +
                                std::abs(spin * V[self[k]]) + std::abs(mass * V[other[k]])});
      push(*v_eq[k], xi, std::abs(vl[k]) / sc);
    }
  }
  return report;
}

// ---- calibration --------------------------------------------------------------

ModelParams with_calibrated(const ModelParams& params, const CalibrationResult& result) {
  ModelParams p = params;
  (result.target == CalibrationTarget::kH ? p.h : p.C) = result.value;
  return p;
}

CalibrationResult calibrate(const ModelParams& params, CalibrationTarget target, const Window& window,
                            int profile_points) {
  CalibrationResult result;
  result.target = target;
  result.initial = target == CalibrationTarget::kH ? params.h : params.C;
  result.center = window.center();

  auto set = [&](double value) {
    ModelParams p = params;
    (target == CalibrationTarget::kH ? p.h : p.C) = value;
    return p;
  };
  auto center_residual = [&](double value) {
    try {
      return einstein_11_residual(result.center, set(value));
    } catch (const Error&) {
      return kNaN;
    }
  };
  const bool single_point = window.lo == window.hi;
  const std::vector<double> grid =
      single_point ? std::vector<double>{window.lo} : window_grid(window, profile_points);
  auto max_residual = [&](double value) {
    const ModelParams p = set(value);
    double worst = 0.0;
    for (double xi : grid) {
      try {
        worst = std::max(worst, std::abs(einstein_11_residual(xi, p)));
      } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
      }
    }
    return worst;
  };

  // Admissible search interval.
  double lo, hi;
  if (target == CalibrationTarget::kH) {
    hi = std::max(4.0, 4.0 * std::abs(result.initial));
    lo = -hi;
  } else {
    const double km = params.kappa * params.m;
    hi = km > 0.0 ? 1.0 / km : std::max(10.0, 10.0 * std::abs(result.initial));
    lo = 0.0;
  }
  const int scan = 4000;
  std::vector<double> xs(scan + 1), rs(scan + 1);
  for (int k = 0; k <= scan; ++k) {
    xs[k] = lo + (hi - lo) * k / scan;
    if (target == CalibrationTarget::kC && (k == 0 || k == scan)) {
      xs[k] = k == 0 ? (hi - lo) * 1e-9 : hi * (1.0 - 1e-12);
    }
    rs[k] = center_residual(xs[k]);
  }

  double best = kNaN;
  for (int k = 0; k < scan; ++k) {
    if (!std::isfinite(rs[k]) || !std::isfinite(rs[k + 1])) continue;
    if ((rs[k] > 0.0) == (rs[k + 1] > 0.0) && rs[k] != 0.0) continue;
    double a = xs[k], b = xs[k + 1], fa = rs[k];
    for (int it = 0; it < 200 && b - a > 0.0; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      const double fm = center_residual(mid);
      if (!std::isfinite(fm)) break;
      if ((fm > 0.0) == (fa > 0.0) && fm != 0.0) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    const double root = std::abs(center_residual(a)) <= std::abs(center_residual(b)) ? a : b;
    // A sign change across a pole of the residual is not a root.
    if (!(std::abs(center_residual(root)) < 1e-9)) continue;
    if (!singularities(set(root), window.lo - params.singular_guard,
                       window.hi + params.singular_guard)
             .empty()) {
      continue;
    }
    if (std::isnan(best) || std::abs(root - result.initial) < std::abs(best - result.initial)) {
      best = root;
    }
  }

  const double initial_max = max_residual(result.initial);
  if (!std::isnan(best)) {
    result.value = best;
    result.method = "bisection";
  } else {
    // Golden-section refinement around the best scanned point.
    int k_best = 0;
    double v_best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= scan; k += 10) {
      const double v = max_residual(xs[k]);
      if (v < v_best) {
        v_best = v;
        k_best = k;
      }
    }
    double a = xs[std::max(0, k_best - 10)], b = xs[std::min(scan, k_best + 10)];
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = max_residual(c), fd = max_residual(d);
    for (int it = 0; it < 100; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = max_residual(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = max_residual(d);
      }
    }
    const double candidate = fc < fd ? c : d;
    result.value = std::min(fc, fd) < v_best ? candidate : xs[k_best];
    result.method = "golden-section";
  }

  const ModelParams calibrated = set(result.value);
  result.center_residual = center_residual(result.value);
  result.grid = grid;
  for (double xi : grid) {
    double r = kNaN;
    try {
      r = einstein_11_residual(xi, calibrated);
    } catch (const Error&) {
    }
    result.profile.push_back(r);
  }
  result.max_abs = max_residual(result.value);
  result.improved = std::abs(result.center_residual) < std::abs(center_residual(result.initial)) ||
                    result.max_abs < initial_max;
  return result;
}

// ---- localization -------------------------------------------------------------

LocalizationReport localization_report(const ModelParams& p, double tol) {
  LocalizationReport report;
  if (!std::holds_alternative<Linear>(p.nonlinearity)) report.energy_exponent = energy_exponent(p);

  auto f = [&](double xi) { return energy_density_invariant(xi, p); };
  auto charge = [&](double xi) {
    return charge_density_from_current(xi, p) * volume_element(alpha_beta_gamma(xi, p), p.theta);
  };
  report.energy = integrate_domain(f, p, tol);
  report.charge = integrate_domain(charge, p, tol);
  report.energy_finite = !report.energy.divergent && report.energy.result.converged;
  report.charge_finite = !report.charge.divergent && report.charge.result.converged;

  const Window w = valid_window(p);
  for (double gap = w.width(); gap >= p.singular_guard; gap /= 2.0) {
    const double xi = w.lo + gap;
    report.tail_xi.push_back(xi);
    report.tail_f.push_back(f(xi));
    double c = kNaN;
    try {
      c = charge(xi);
    } catch (const Error&) {
    }
    report.tail_charge.push_back(c);
  }
  // Largest index after which f decreases monotonically toward the boundary.
  std::size_t onset = report.tail_f.size() - 1;
  while (onset > 0 && report.tail_f[onset] <= report.tail_f[onset - 1]) --onset;
  report.decay_onset = report.tail_xi[onset];
  report.f_decays = report.tail_f.size() >= 2 && onset + 1 < report.tail_f.size() &&
                    report.tail_f.back() < report.tail_f[onset];

  numerics::QuadOptions options;
  options.abs_tol = 1e-300;
  options.rel_tol = tol;
  const double tail = numerics::adaptive_quad(f, w.lo, w.lo + w.width() / 128.0, options).value;
  const double total = report.energy.result.value;
  report.tail_fraction = total != 0.0 ? std::abs(tail / total) : 0.0;
  return report;
}

}  // namespace nlspinor

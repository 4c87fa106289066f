#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nlspinor/metric.hpp"
#include "nlspinor/model.hpp"
#include "nlspinor/observables.hpp"

namespace nlspinor {

// One residual profile. Non-gating profiles are findings: they are reported
// with their tolerance and pass flag but do not decide the suite verdict.
struct EquationResidual {
  std::string name;
  std::vector<double> xi;
  std::vector<double> residual;
  double tolerance = 0.0;
  bool gating = true;

  double max_abs() const;
  double rms() const;
  bool passed() const { return max_abs() <= tolerance; }
};

struct ResidualReport {
  std::string suite;
  std::vector<double> grid;
  std::vector<EquationResidual> equations;

  /// All gating equations pass.
  bool passed() const;
  const EquationResidual& equation(std::string_view name) const;
};

/// `#`-prefixed summary block followed by `xi,eq_name,residual` rows.
std::string to_csv(const ResidualReport& report);
ResidualReport report_from_csv(std::string_view text);

struct SuiteTolerances {
  double geometric = 1e-9;   // analytic-derivative identities
  double algebraic = 1e-12;  // alpha = 2 beta + gamma and proportionality
  double dirac_equatorial = 1e-7;
  double quadrature = 1e-6;  // anything depending on phase functions or calibration
};

/// Liouville equation beta'' - gamma'' = e^{2 beta + 2 gamma}, the coordinate
/// condition and the beta/alpha, gamma/alpha proportionality.
ResidualReport liouville_suite(const ModelParams& params, const std::vector<double>& grid,
                               const SuiteTolerances& tol = {});

/// Normalized residual of the (1,1) Einstein equation in the form
///   alpha'^2 = (4+3G)^2/(3G^2+8G+4) e^{2 alpha} [e^{-a alpha} - kappa (m S - L_N)],
/// signed, divided by max(1, |lhs|, |rhs|).
double einstein_11_residual(double xi, const ModelParams& params);

/// G^mu_mu + kappa T^mu_mu profiles (findings), the (0,0)-(2,2) recomposition
/// identity (gating) and the (1,1) Einstein equation at `anchor` (gating).
ResidualReport einstein_suite(const ModelParams& params, const std::vector<double>& grid,
                              double anchor, const SuiteTolerances& tol = {});

enum class DiracMode { kEquatorial, kReduced };
std::string_view to_string(DiracMode mode);

/// First-order system for U_rho(S) (gating), the second-order equation for
/// U = U1 + U4 (gating) and the xi-space equations for V_rho (findings).
/// Equatorial mode needs theta = pi/2 and eps = 1 and uses B from cot(theta);
/// reduced mode substitutes B = sqrt(1 - eps) Q. Throws kModeParameterMismatch.
ResidualReport dirac_suite(const ModelParams& params, const std::vector<double>& grid,
                           DiracMode mode, const SuiteTolerances& tol = {});

enum class CalibrationTarget { kH, kC };

struct CalibrationResult {
  CalibrationTarget target = CalibrationTarget::kH;
  double initial = 0.0;
  double value = 0.0;
  double center = 0.0;
  double center_residual = 0.0;
  std::vector<double> grid;
  std::vector<double> profile;  // the (1,1) Einstein equation residual over the window
  double max_abs = 0.0;
  std::string method;  // "bisection" or "golden-section"
  bool improved = false;
};

/// Adjusts h or C so that the (1,1) Einstein equation holds at the window
/// center: bisection on a sign change of the center residual (root nearest
/// the initial value that keeps the window free of singularities), otherwise
/// golden-section on the window's max |residual|. The full window
/// profile is always returned. A single-point window is a pointwise solve.
CalibrationResult calibrate(const ModelParams& params, CalibrationTarget target, const Window& window,
                            int profile_points = 200);

ModelParams with_calibrated(const ModelParams& params, const CalibrationResult& result);

struct LocalizationReport {
  std::vector<double> tail_xi;  // geometric approach to the lower boundary
  std::vector<double> tail_f;
  std::vector<double> tail_charge;  // q sqrt(-^3g)
  DomainIntegral energy;
  DomainIntegral charge;
  double energy_exponent = 0.0;
  bool energy_finite = false;
  bool charge_finite = false;
  bool f_decays = false;       // monotone decrease toward the boundary
  double decay_onset = 0.0;    // xi* beyond which f decreases
  double tail_fraction = 0.0;  // share of E in the last 1/128 of the window

  bool passed() const { return energy_finite && charge_finite; }
};

LocalizationReport localization_report(const ModelParams& params, double tol = 1e-10);

}  // namespace nlspinor

#include "nlspinor/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "nlspinor/error.hpp"
#include "nlspinor/metric.hpp"
#include "nlspinor/observables.hpp"
#include "nlspinor/spinor.hpp"

namespace nlspinor::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::optional<ModelParams> resolve(const RunConfig& run, std::ostream& err) {
  ModelParams p = run.config.params;
  if (run.theta) p.theta = *run.theta;
  const ValidationResult v = validate(p);
  for (const auto& w : v.warnings) err << "warning: " << w.field << ": " << w.message << '\n';
  if (!v.ok()) {
    for (const auto& e : v.violations) err << "config invalid: " << e.field << ": " << e.message << '\n';
    return std::nullopt;
  }
  return p;
}

ConfigFile resolved_config(const RunConfig& run, const ModelParams& p) {
  ConfigFile c = run.config;
  c.params = p;
  return c;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config invalid: " << e.what() << '\n';
    return kConfigInvalid;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kValidation || e.code() == ErrorCode::kModeParameterMismatch) {
      err << "config invalid: " << e.what() << '\n';
      return kConfigInvalid;
    }
    err << "domain error at xi = " << format_real(e.value()) << ": " << e.what() << '\n';
    return kDomainError;
  }
}

double anchor_of(const ConfigFile& config, const ModelParams& p) {
  return config.anchor ? *config.anchor : valid_window(p).center();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << text;
}

struct Total {
  double value = kNaN;
  double error_bound = kNaN;
  std::string status = "ok";
};

Total total(const std::function<numerics::QuadResult()>& compute) {
  Total t;
  try {
    const numerics::QuadResult r = compute();
    t.value = r.value;
    t.error_bound = r.error_bound;
  } catch (const Error& e) {
    t.value = e.value();
    t.status = std::string(to_string(e.code()));
  }
  return t;
}

std::string localization_csv(const LocalizationReport& r) {
  std::ostringstream out;
  out << "# suite = localization\n";
  out << "# passed = " << (r.passed() ? 1 : 0) << '\n';
  out << "# energy = " << format_real(r.energy.result.value) << '\n';
  out << "# energy_error_bound = " << format_real(r.energy.result.error_bound) << '\n';
  out << "# energy_tail_estimate = " << format_real(r.energy.tail_estimate) << '\n';
  out << "# energy_finite = " << (r.energy_finite ? 1 : 0) << '\n';
  out << "# charge = " << format_real(r.charge.result.value) << '\n';
  out << "# charge_error_bound = " << format_real(r.charge.result.error_bound) << '\n';
  out << "# charge_tail_estimate = " << format_real(r.charge.tail_estimate) << '\n';
  out << "# charge_finite = " << (r.charge_finite ? 1 : 0) << '\n';
  out << "# energy_exponent = " << format_real(r.energy_exponent) << '\n';
  out << "# f_decays = " << (r.f_decays ? 1 : 0) << '\n';
  out << "# decay_onset = " << format_real(r.decay_onset) << '\n';
  out << "# tail_fraction = " << format_real(r.tail_fraction) << '\n';
  out << "xi,f,charge_density\n";
  for (std::size_t i = 0; i < r.tail_xi.size(); ++i) {
    out << format_real(r.tail_xi[i]) << ',' << format_real(r.tail_f[i]) << ','
        << format_real(r.tail_charge[i]) << '\n';
  }
  return out.str();
}

void set_field(ModelParams& p, const std::string& field, double value) {
  if (field == "G") p.G = value;
  else if (field == "m") p.m = value;
  else if (field == "h") p.h = value;
  else if (field == "epsilon") p.epsilon = value;
  else if (field == "lambda") {
    if (auto* q = std::get_if<Quadratic>(&p.nonlinearity)) q->lambda = value;
    if (auto* w = std::get_if<Power>(&p.nonlinearity)) w->lambda = value;
  } else if (field == "n") {
    std::get<Power>(p.nonlinearity).n = value;
  }
}

}  // namespace

std::vector<double> sweep_values(const SweepSpec& sweep) {
  if (!sweep.values.empty()) return sweep.values;
  if (sweep.steps <= 1) return {sweep.from};
  std::vector<double> v(sweep.steps);
  for (int k = 0; k < sweep.steps; ++k) {
    v[k] = sweep.from + (sweep.to - sweep.from) * k / (sweep.steps - 1);
  }
  return v;
}

int cmd_eval(const RunConfig& run, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto params = resolve(run, err);
    if (!params) return int(kConfigInvalid);
    const ModelParams& p = *params;

    std::ostringstream csv;
    csv << "# nlspinor eval\n";
    csv << serialize_config(resolved_config(run, p), "# ");
    csv << "# grid = " << run.grid << '\n';
    csv << "# tol = " << format_real(run.tol) << '\n';
    csv << "xi,r,S,alpha,beta,gamma,g00,g11,g22,g33,"
           "ReV1,ImV1,ReV2,ImV2,ReV3,ImV3,ReV4,ImV4,T00,T11,f,j0,j1,j2,j3,q\n";
    for (double xi : evaluation_grid(p, run.grid)) {
      const MetricPoint mp = alpha_beta_gamma(xi, p);
      const SpinorAmplitudes v = V_components(xi, p);
      const ObservableRecord o = observables_at(xi, p);
      const double row[] = {xi,
                            1.0 / xi,
                            o.S,
                            mp.alpha,
                            mp.beta,
                            mp.gamma,
                            mp.g00,
                            mp.g11,
                            mp.g22,
                            mp.g33,
                            v.V1().real(),
                            v.V1().imag(),
                            v.V2().real(),
                            v.V2().imag(),
                            v.V3().real(),
                            v.V3().imag(),
                            v.V4().real(),
                            v.V4().imag(),
                            o.T00,
                            o.T11,
                            o.f,
                            o.j0,
                            o.j1,
                            o.j2,
                            o.j3,
                            o.q};
      bool first = true;
      for (double x : row) {
        if (!first) csv << ',';
        csv << format_real(x);
        first = false;
      }
      csv << '\n';
    }
    const Total e = total([&] { return total_energy(p, run.tol); });
    const Total q = total([&] { return total_charge(p, run.tol); });
    csv << "# total_energy = " << format_real(e.value) << '\n';
    csv << "# total_energy_error_bound = " << format_real(e.error_bound) << '\n';
    csv << "# total_energy_status = " << e.status << '\n';
    csv << "# total_charge = " << format_real(q.value) << '\n';
    csv << "# total_charge_error_bound = " << format_real(q.error_bound) << '\n';
    csv << "# total_charge_status = " << q.status << '\n';

    if (run.out.empty()) {
      out << csv.str();
    } else {
      write_file(run.out, csv.str());
    }
    return int(kOk);
  });
}

int cmd_verify(const RunConfig& run, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> kSuites = {"liouville", "einstein", "dirac", "localization"};
  if (run.suite != "all" && std::find(kSuites.begin(), kSuites.end(), run.suite) == kSuites.end()) {
    err << "config invalid: suite: unknown suite '" << run.suite << "'\n";
    return kConfigInvalid;
  }
  return guarded(err, [&] {
    const auto params = resolve(run, err);
    if (!params) return int(kConfigInvalid);
    const ModelParams& p = *params;
    const std::vector<double> grid = window_grid(valid_window(p), run.grid);
    const double anchor = anchor_of(run.config, p);

    std::filesystem::path dir;
    if (!run.out.empty()) {
      dir = run.out;
      std::filesystem::create_directories(dir);
    }

    std::ostringstream summary;
    bool all_passed = true;
    auto record = [&](const std::string& name, bool passed, const std::string& csv,
                      const std::string& detail) {
      all_passed = all_passed && passed;
      summary << name << ' ' << (passed ? "PASS" : "FAIL") << detail << '\n';
      if (!dir.empty()) write_file(dir / (name + ".csv"), csv);
    };
    auto detail = [](const ResidualReport& r) {
      std::ostringstream d;
      for (const auto& e : r.equations) {
        d << "\n  " << e.name << " max_abs = " << format_real(e.max_abs())
          << " tolerance = " << format_real(e.tolerance) << (e.passed() ? " ok" : " exceeded")
          << (e.gating ? "" : " (finding)");
      }
      return d.str();
    };
    const bool all = run.suite == "all";

    if (all || run.suite == "liouville") {
      const ResidualReport r = liouville_suite(p, grid);
      record("liouville", r.passed(), to_csv(r), detail(r));
    }
    if (all || run.suite == "einstein") {
      const ResidualReport r = einstein_suite(p, grid, anchor);
      record("einstein", r.passed(), to_csv(r), detail(r));
    }
    if (all || run.suite == "dirac") {
      const ResidualReport r = dirac_suite(p, grid, run.mode);
      record("dirac", r.passed(), to_csv(r),
             " mode = " + std::string(to_string(run.mode)) + detail(r));
    }
    if (all || run.suite == "localization") {
      const LocalizationReport r = localization_report(p, run.tol);
      std::ostringstream d;
      d << "\n  energy = " << format_real(r.energy.result.value)
        << " error_bound = " << format_real(r.energy.result.error_bound)
        << (r.energy_finite ? " finite" : " divergent") << "\n  charge = "
        << format_real(r.charge.result.value)
        << " error_bound = " << format_real(r.charge.result.error_bound)
        << (r.charge_finite ? " finite" : " divergent");
      record("localization", r.passed(), localization_csv(r), d.str());
    }
    summary << "overall " << (all_passed ? "PASS" : "FAIL") << '\n';
    if (!dir.empty()) write_file(dir / "summary.txt", summary.str());
    out << summary.str();
    return int(all_passed ? kOk : kVerificationFailed);
  });
}

int cmd_sweep(const RunConfig& run, const SweepSpec& sweep, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> kFields = {"G", "m", "lambda", "n", "h", "epsilon"};
  if (std::find(kFields.begin(), kFields.end(), sweep.vary) == kFields.end()) {
    err << "config invalid: vary: cannot sweep '" << sweep.vary << "'\n";
    return kConfigInvalid;
  }
  const Nonlinearity& nl = run.config.params.nonlinearity;
  if (sweep.vary == "lambda" && std::holds_alternative<Linear>(nl)) {
    err << "config invalid: vary: lambda needs a quadratic or power nonlinearity\n";
    return kConfigInvalid;
  }
  if (sweep.vary == "n" && !std::holds_alternative<Power>(nl)) {
    err << "config invalid: vary: n needs a power nonlinearity\n";
    return kConfigInvalid;
  }
  return guarded(err, [&] {
    const auto base = resolve(run, err);
    if (!base) return int(kConfigInvalid);

    std::ostringstream csv;
    csv << "# nlspinor sweep\n";
    csv << serialize_config(resolved_config(run, *base), "# ");
    csv << "# vary = " << sweep.vary << '\n';
    csv << "# recalibrate = " << (sweep.recalibrate ? "true" : "false") << '\n';
    csv << "# tol = " << format_real(run.tol) << '\n';
    csv << sweep.vary
        << ",status,h,total_energy,energy_error_bound,total_charge,charge_error_bound,"
           "liouville_max,einstein_anchor,dirac_max\n";
    for (double value : sweep_values(sweep)) {
      ModelParams p = *base;
      set_field(p, sweep.vary, value);
      std::string status = "ok";
      double cols[8];
      std::fill(std::begin(cols), std::end(cols), kNaN);
      const ValidationResult v = validate(p);
      if (!v.ok()) {
        status = "invalid:" + v.violations.front().field;
        std::replace(status.begin(), status.end(), ',', '|');
      } else {
        try {
          double anchor = anchor_of(run.config, p);
          if (sweep.recalibrate) {
            p = with_calibrated(p, calibrate(p, CalibrationTarget::kH, Window{anchor, anchor}));
            anchor = anchor_of(run.config, p);
          }
          const Total e = total([&] { return total_energy(p, run.tol); });
          const Total q = total([&] { return total_charge(p, run.tol); });
          if (e.status != "ok") status = e.status;
          else if (q.status != "ok") status = q.status;
          cols[0] = e.value;
          cols[1] = e.error_bound;
          cols[2] = q.value;
          cols[3] = q.error_bound;
          const std::vector<double> grid = window_grid(valid_window(p), run.grid);
          double worst = 0.0;
          for (const auto& eq : liouville_suite(p, grid).equations) worst = std::max(worst, eq.max_abs());
          cols[4] = worst;
          cols[5] = std::abs(einstein_11_residual(anchor, p));
          worst = 0.0;
          for (const auto& eq : dirac_suite(p, grid, run.mode).equations) {
            if (eq.gating) worst = std::max(worst, eq.max_abs());
          }
          cols[6] = worst;
        } catch (const Error& e) {
          status = std::string(to_string(e.code()));
        }
      }
      csv << format_real(value) << ',' << status << ',' << format_real(p.h);
      for (int k = 0; k < 7; ++k) csv << ',' << format_real(cols[k]);
      csv << '\n';
    }
    if (run.out.empty()) {
      out << csv.str();
    } else {
      write_file(run.out, csv.str());
    }
    return int(kOk);
  });
}

int cmd_calibrate(const RunConfig& run, const CalibrateSpec& spec, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    const auto params = resolve(run, err);
    if (!params) return int(kConfigInvalid);
    Window window = valid_window(*params);
    if (spec.window_lo) window.lo = *spec.window_lo;
    if (spec.window_hi) window.hi = *spec.window_hi;
    if (!(window.lo <= window.hi)) {
      err << "config invalid: window: lower end exceeds upper end\n";
      return int(kConfigInvalid);
    }
    const CalibrationResult c = calibrate(*params, spec.free, window, run.grid);
    const char* name = spec.free == CalibrationTarget::kH ? "h" : "C";

    out << "# nlspinor calibrate\n";
    out << "# free = " << name << '\n';
    out << "# initial = " << format_real(c.initial) << '\n';
    out << "# value = " << format_real(c.value) << '\n';
    out << "# method = " << c.method << '\n';
    out << "# center = " << format_real(c.center) << '\n';
    out << "# center_residual = " << format_real(c.center_residual) << '\n';
    out << "# window_max_abs = " << format_real(c.max_abs) << '\n';
    out << "xi,residual\n";
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
      out << format_real(c.grid[i]) << ',' << format_real(c.profile[i]) << '\n';
    }
    if (!run.out.empty()) {
      ConfigFile calibrated = resolved_config(run, with_calibrated(*params, c));
      calibrated.anchor = c.center;
      write_file(run.out, serialize_config(calibrated));
    }
    return int(std::abs(c.center_residual) <= 1e-8 ? kOk : kVerificationFailed);
  });
}

}  // namespace nlspinor::cli

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nlspinor/cli.hpp"

using namespace nlspinor;

int main(int argc, char** argv) {
  CLI::App app{"Static spherically symmetric Einstein-nonlinear-spinor solutions"};
  app.require_subcommand(1);

  std::string config_path;
  cli::RunConfig run;
  double theta = 0.0;
  std::string mode = "equatorial";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Parameter file")->required();
    sub->add_option("--grid", run.grid, "Number of grid points")->check(CLI::PositiveNumber);
    sub->add_option("--theta", theta, "Polar angle in radians");
    sub->add_option("--tol", run.tol, "Relative quadrature tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out", run.out, "Output file (eval, sweep, calibrate) or directory (verify)");
    sub->add_option("--mode", mode, "Dirac verification mode")
        ->check(CLI::IsMember({"equatorial", "reduced"}));
  };

  auto* eval = app.add_subcommand("eval", "Per-xi profiles as CSV");
  common(eval);

  auto* verify = app.add_subcommand("verify", "Run residual and localization suites");
  common(verify);
  verify->add_option("--suite", run.suite, "liouville, einstein, dirac, localization or all");

  cli::SweepSpec sweep;
  auto* sw = app.add_subcommand("sweep", "Summaries over one varied parameter");
  common(sw);
  sw->add_option("--vary", sweep.vary, "G, m, lambda, n, h or epsilon")->required();
  sw->add_option("--from", sweep.from, "First value");
  sw->add_option("--to", sweep.to, "Last value");
  sw->add_option("--steps", sweep.steps, "Number of values")->check(CLI::PositiveNumber);
  sw->add_option("--values", sweep.values, "Explicit values")->delimiter(',');
  sw->add_flag("--recalibrate", sweep.recalibrate, "Re-solve h at the anchor for each value");

  cli::CalibrateSpec calib;
  std::string free = "h";
  double lo = 0.0, hi = 0.0;
  auto* cal = app.add_subcommand("calibrate", "Solve the (1,1) equation for h or C");
  common(cal);
  cal->add_option("--free", free, "Constant to adjust")->check(CLI::IsMember({"h", "C"}));
  auto* lo_opt = cal->add_option("--window-lo", lo, "Lower end of the calibration window");
  auto* hi_opt = cal->add_option("--window-hi", hi, "Upper end of the calibration window");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kConfigInvalid;
  }

  try {
    run.config = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config invalid: " << e.what() << '\n';
    return cli::kConfigInvalid;
  }
  auto* active = app.get_subcommands().front();
  if (active->count("--theta") > 0) run.theta = theta;
  run.mode = mode == "reduced" ? DiracMode::kReduced : DiracMode::kEquatorial;

  try {
    if (eval->parsed()) return cli::cmd_eval(run, std::cout, std::cerr);
    if (verify->parsed()) return cli::cmd_verify(run, std::cout, std::cerr);
    if (sw->parsed()) return cli::cmd_sweep(run, sweep, std::cout, std::cerr);
    calib.free = free == "C" ? CalibrationTarget::kC : CalibrationTarget::kH;
    if (lo_opt->count() > 0) calib.window_lo = lo;
    if (hi_opt->count() > 0) calib.window_hi = hi;
    return cli::cmd_calibrate(run, calib, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kDomainError;
  }
}

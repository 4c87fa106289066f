#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nlspinor/config.hpp"
#include "nlspinor/verify.hpp"

namespace nlspinor::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kConfigInvalid = 2,
  kDomainError = 3,
};

struct RunConfig {
  ConfigFile config;
  int grid = 200;
  double tol = 1e-10;
  std::optional<double> theta;
  std::string out;             // file for eval/calibrate, directory for verify
  std::string suite = "all";   // liouville | einstein | dirac | localization | all
  DiracMode mode = DiracMode::kEquatorial;
};

struct SweepSpec {
  std::string vary;  // G | m | lambda | n | h | epsilon
  double from = 0.0;
  double to = 0.0;
  int steps = 1;
  std::vector<double> values;  // overrides from/to/steps when non-empty
  bool recalibrate = false;    // re-solve h at the anchor for every point
};

struct CalibrateSpec {
  CalibrationTarget free = CalibrationTarget::kH;
  std::optional<double> window_lo;
  std::optional<double> window_hi;
};

/// Per-xi profile CSV; a `#` block with the resolved config leads the output
/// and total energy/charge close it.
int cmd_eval(const RunConfig& run, std::ostream& out, std::ostream& err);

/// Runs the selected suites, writes `<suite>.csv` and `summary.txt` into
/// run.out (when set) and prints the summary.
int cmd_verify(const RunConfig& run, std::ostream& out, std::ostream& err);

int cmd_sweep(const RunConfig& run, const SweepSpec& sweep, std::ostream& out, std::ostream& err);

/// Prints the residual profile; writes the calibrated config to run.out when set.
int cmd_calibrate(const RunConfig& run, const CalibrateSpec& spec, std::ostream& out,
                  std::ostream& err);

/// Sweep values in the order they are evaluated.
std::vector<double> sweep_values(const SweepSpec& sweep);

}  // namespace nlspinor::cli

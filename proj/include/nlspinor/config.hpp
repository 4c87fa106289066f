#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nlspinor/model.hpp"

namespace nlspinor {

/// Shortest decimal that parses back to exactly `value`.
std::string format_real(double value);

// Flat `name = value` file with `#` comments. Unknown keys and malformed
// numbers are reported through ConfigError.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigFile {
  ModelParams params;
  /// Point where the (1,1) Einstein equation is enforced by calibration;
  /// defaults to the middle of the valid window when absent.
  std::optional<double> anchor;
};

ConfigFile parse_config(std::string_view text);
ConfigFile load_config(const std::string& path);

/// Ordered key/value view of a config, as written to files and CSV headers.
std::map<std::string, std::string> config_entries(const ConfigFile& config);
std::string serialize_config(const ConfigFile& config, std::string_view line_prefix = "");

}  // namespace nlspinor

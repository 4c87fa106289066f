#include "nlspinor/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

namespace nlspinor {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid number for '" + std::string(key) + "': " + std::string(text));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("invalid boolean for '" + std::string(key) + "': " + std::string(text));
}

}  // namespace

std::string format_real(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

ConfigFile parse_config(std::string_view text) {
  ConfigFile config;
  ModelParams& p = config.params;
  std::string kind = "linear";
  double lambda = 0.0;
  double n = 3.0;
  bool have_n = false;
  std::set<std::string> seen;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'name = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");

    if (key == "G") p.G = parse_real(key, value);
    else if (key == "kappa") p.kappa = parse_real(key, value);
    else if (key == "m") p.m = parse_real(key, value);
    else if (key == "C") p.C = parse_real(key, value);
    else if (key == "h") p.h = parse_real(key, value);
    else if (key == "xi1") p.xi1 = parse_real(key, value);
    else if (key == "xi_c") p.xi_c = parse_real(key, value);
    else if (key == "theta") p.theta = parse_real(key, value);
    else if (key == "epsilon") p.epsilon = parse_real(key, value);
    else if (key == "alpha1") p.alpha1 = parse_real(key, value);
    else if (key == "alpha2") p.alpha2 = parse_real(key, value);
    else if (key == "R1") p.R1 = parse_real(key, value);
    else if (key == "R2") p.R2 = parse_real(key, value);
    else if (key == "lambda") lambda = parse_real(key, value);
    else if (key == "n") { n = parse_real(key, value); have_n = true; }
    else if (key == "singular_guard") p.singular_guard = parse_real(key, value);
    else if (key == "anchor") config.anchor = parse_real(key, value);
    else if (key == "approx_a_one") p.approx_a_one = parse_bool(key, value);
    else if (key == "sign_dS") {
      const double s = parse_real(key, value);
      if (s != 1.0 && s != -1.0) throw ConfigError("sign_dS must be +1 or -1");
      p.sign_dS = static_cast<int>(s);
    } else if (key == "nonlinearity") {
      kind = std::string(value);
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  if (kind == "linear") {
    p.nonlinearity = Linear{};
  } else if (kind == "quadratic") {
    if (have_n && n != 2.0) throw ConfigError("quadratic nonlinearity requires n = 2");
    p.nonlinearity = Quadratic{lambda};
  } else if (kind == "power") {
    if (!have_n) throw ConfigError("power nonlinearity requires key 'n'");
    p.nonlinearity = Power{lambda, n};
  } else {
    throw ConfigError("unknown nonlinearity '" + kind + "'");
  }
  return config;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::map<std::string, std::string> config_entries(const ConfigFile& config) {
  const ModelParams& p = config.params;
  std::map<std::string, std::string> e;
  e["G"] = format_real(p.G);
  e["kappa"] = format_real(p.kappa);
  e["m"] = format_real(p.m);
  e["C"] = format_real(p.C);
  e["h"] = format_real(p.h);
  e["xi1"] = format_real(p.xi1);
  e["xi_c"] = format_real(p.xi_c);
  e["theta"] = format_real(p.theta);
  e["epsilon"] = format_real(p.epsilon);
  e["alpha1"] = format_real(p.alpha1);
  e["alpha2"] = format_real(p.alpha2);
  e["R1"] = format_real(p.R1);
  e["R2"] = format_real(p.R2);
  e["nonlinearity"] = kind_name(p.nonlinearity);
  if (!std::holds_alternative<Linear>(p.nonlinearity)) {
    e["lambda"] = format_real(coupling(p.nonlinearity));
    e["n"] = format_real(power_exponent(p.nonlinearity));
  }
  e["sign_dS"] = std::to_string(p.sign_dS);
  e["approx_a_one"] = p.approx_a_one ? "true" : "false";
  e["singular_guard"] = format_real(p.singular_guard);
  if (config.anchor) e["anchor"] = format_real(*config.anchor);
  return e;
}

std::string serialize_config(const ConfigFile& config, std::string_view line_prefix) {
  std::string out;
  for (const auto& [key, value] : config_entries(config)) {
    out.append(line_prefix).append(key).append(" = ").append(value).push_back('\n');
  }
  return out;
}

}  // namespace nlspinor

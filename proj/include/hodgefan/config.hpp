#ifndef HODGEFAN_CONFIG_HPP
#define HODGEFAN_CONFIG_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hodgefan/mh_norms.hpp"
#include "hodgefan/model.hpp"

namespace hodgefan {

struct FanRunConfig {
  int lambda_pow_min = -2;
  int lambda_pow_max = 3;
  int m_max = 70;
};

/// Full batch configuration: model grid, fan sweep, norm parameters, suite
/// selection, output routing, and the random seed.
struct RunConfig {
  ModelConfig model = ModelConfig::defaults();
  FanRunConfig fan;
  SlocParams norms;
  std::vector<std::string> suites = {"all"};
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 1;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

/// Flat INI: "[section]" headers, "key = value" lines, '#' or ';' comments.
inline std::map<std::string, std::string> parse_ini(std::istream& in,
                                                    std::vector<std::string>& errors) {
  std::map<std::string, std::string> kv;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back("line " + std::to_string(lineno) + ": unterminated section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    kv[section.empty() ? key : section + "." + key] = trim(line.substr(eq + 1));
  }
  return kv;
}

template <typename T>
void read_value(const std::map<std::string, std::string>& kv, const std::string& key, T& out,
                std::vector<std::string>& errors) {
  auto it = kv.find(key);
  if (it == kv.end()) return;
  std::istringstream ss(it->second);
  T v;
  if (ss >> v)
    out = v;
  else
    errors.push_back(key + ": cannot parse value '" + it->second + "'");
}

}  // namespace detail

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = {
      "exterior", "operators", "fan-eigen", "decomposition", "multiplier", "mh-norms", "all"};
  return names;
}

/// Parse a configuration stream; all validation problems are aggregated into a
/// single exception message.
inline RunConfig config_parse(std::istream& in) {
  std::vector<std::string> errors;
  const auto kv = detail::parse_ini(in, errors);

  RunConfig cfg;
  detail::read_value(kv, "model.n", cfg.model.n, errors);
  detail::read_value(kv, "model.M", cfg.model.M, errors);
  detail::read_value(kv, "model.tol", cfg.model.tol, errors);
  detail::read_value(kv, "fan.lambda_pow_min", cfg.fan.lambda_pow_min, errors);
  detail::read_value(kv, "fan.lambda_pow_max", cfg.fan.lambda_pow_max, errors);
  detail::read_value(kv, "fan.m_max", cfg.fan.m_max, errors);
  detail::read_value(kv, "norms.tau", cfg.norms.tau, errors);
  detail::read_value(kv, "norms.rho", cfg.norms.rho, errors);
  detail::read_value(kv, "norms.sigma", cfg.norms.sigma, errors);
  detail::read_value(kv, "norms.J", cfg.norms.J, errors);
  detail::read_value(kv, "norms.resolution", cfg.norms.resolution, errors);
  detail::read_value(kv, "run.seed", cfg.seed, errors);
  detail::read_value(kv, "run.format", cfg.format, errors);
  detail::read_value(kv, "run.out", cfg.out_path, errors);

  if (auto it = kv.find("run.suites"); it != kv.end()) {
    cfg.suites.clear();
    std::istringstream ss(it->second);
    std::string name;
    while (std::getline(ss, name, ',')) {
      name = detail::trim(name);
      if (!name.empty()) cfg.suites.push_back(name);
    }
  }

  cfg.model.lambdas =
      ModelConfig::geometric_lambda_grid(cfg.fan.lambda_pow_min, cfg.fan.lambda_pow_max);
  if (auto it = kv.find("model.lambdas"); it != kv.end()) {
    cfg.model.lambdas.clear();
    std::istringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        cfg.model.lambdas.push_back(std::stod(detail::trim(tok)));
      } catch (const std::exception&) {
        errors.push_back("model.lambdas: cannot parse value '" + tok + "'");
      }
    }
  }

  if (cfg.model.n < 1) errors.push_back("model.n: must be at least 1");
  if (cfg.model.M < 4) errors.push_back("model.M: must be at least 4");
  if (cfg.model.tol <= 0) errors.push_back("model.tol: must be positive");
  for (double l : cfg.model.lambdas)
    if (l == 0.0) errors.push_back("model.lambdas: zero is not an admissible slice");
  if (cfg.fan.lambda_pow_min > cfg.fan.lambda_pow_max)
    errors.push_back("fan.lambda_pow_min: exceeds fan.lambda_pow_max");
  if (cfg.fan.m_max < 0) errors.push_back("fan.m_max: must be nonnegative");
  if (cfg.norms.tau <= 0) errors.push_back("norms.tau: must be positive");
  if (cfg.norms.J < 4) errors.push_back("norms.J: must be at least 4");
  if (cfg.norms.resolution < 16) errors.push_back("norms.resolution: must be at least 16");
  if (cfg.format != "json" && cfg.format != "csv")
    errors.push_back("run.format: must be json or csv");
  for (const auto& s : cfg.suites) {
    const auto& names = known_suites();
    if (std::find(names.begin(), names.end(), s) == names.end())
      errors.push_back("run.suites: unknown suite '" + s + "'");
  }

  if (!errors.empty()) {
    std::string msg = "configuration errors:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }
  return cfg;
}

inline RunConfig config_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config_load: cannot open " + path);
  return config_parse(in);
}

}  // namespace hodgefan

#endif

#pragma once

// Run configuration: defaults, key=value files and flag overrides, plus the
// mesh specification strings understood by the command line tool.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cprsc/cases.hpp"
#include "cprsc/driver.hpp"
#include "cprsc/generator.hpp"
#include "cprsc/mesh.hpp"

namespace cprsc {

struct RunConfig {
  std::string case_name;
  std::string mesh;  // file path, "grid:NXxNY[:jitter=J][:seed=S][:rotate=0|1]", or empty for the case default
  int order = 4;
  double cfl = 0.2;
  std::optional<double> t_end;
  SchemeMode scheme = SchemeMode::hybrid;
  IndicatorMode indicator = IndicatorMode::improved;
  DetectionVariable variable = DetectionVariable::density_pressure;
  DetectionTiming timing = DetectionTiming::per_stage;
  bool limiter = true;
  std::string out = "out";
  double frame_interval = 0.0;
  std::vector<double> slices;
  std::vector<int> levels{10, 20, 40, 80};

  SolverConfig solver_config() const {
    SolverConfig s;
    s.order = order;
    s.cfl = cfl;
    s.scheme = scheme;
    s.indicator.mode = indicator;
    s.indicator.variable = variable;
    s.limiter = limiter;
    s.timing = timing;
    return s;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("value '" + v + "' for " + key + " is not a number");
  }
  if (used != v.size()) throw ConfigError("value '" + v + "' for " + key + " is not a number");
  return d;
}

inline int to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  int i = 0;
  try {
    i = std::stoi(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("value '" + v + "' for " + key + " is not an integer");
  }
  if (used != v.size()) throw ConfigError("value '" + v + "' for " + key + " is not an integer");
  return i;
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError("value '" + v + "' for " + key + " is not a boolean");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

}  // namespace detail

inline SchemeMode parse_scheme(const std::string& v) {
  if (v == "cpr") return SchemeMode::cpr;
  if (v == "cnnw2") return SchemeMode::cnnw2;
  if (v == "hybrid") return SchemeMode::hybrid;
  throw ConfigError("scheme must be cpr, cnnw2 or hybrid, got '" + v + "'");
}

inline IndicatorMode parse_indicator(const std::string& v) {
  if (v == "original") return IndicatorMode::original;
  if (v == "improved") return IndicatorMode::improved;
  throw ConfigError("indicator must be original or improved, got '" + v + "'");
}

/// Applies one setting. Keys match the long command-line flags.
inline void set_config_value(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "case") {
    c.case_name = value;
  } else if (key == "mesh") {
    c.mesh = value;
  } else if (key == "order" || key == "N") {
    c.order = detail::to_int(key, value);
  } else if (key == "cfl") {
    c.cfl = detail::to_double(key, value);
  } else if (key == "t_end") {
    c.t_end = detail::to_double(key, value);
  } else if (key == "scheme") {
    c.scheme = parse_scheme(value);
  } else if (key == "indicator") {
    c.indicator = parse_indicator(value);
  } else if (key == "variable") {
    if (value == "rho")
      c.variable = DetectionVariable::density;
    else if (value == "rho_p")
      c.variable = DetectionVariable::density_pressure;
    else
      throw ConfigError("variable must be rho or rho_p, got '" + value + "'");
  } else if (key == "detection") {
    if (value == "stage")
      c.timing = DetectionTiming::per_stage;
    else if (value == "step")
      c.timing = DetectionTiming::per_step;
    else
      throw ConfigError("detection must be stage or step, got '" + value + "'");
  } else if (key == "limiter") {
    c.limiter = detail::to_bool(key, value);
  } else if (key == "out") {
    c.out = value;
  } else if (key == "frame_interval") {
    c.frame_interval = detail::to_double(key, value);
  } else if (key == "slices") {
    c.slices.clear();
    for (const auto& s : detail::split(value, ','))
      if (!s.empty()) c.slices.push_back(detail::to_double(key, s));
  } else if (key == "levels") {
    c.levels.clear();
    for (const auto& s : detail::split(value, ','))
      if (!s.empty()) c.levels.push_back(detail::to_int(key, s));
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

inline void validate(const RunConfig& c) {
  if (c.order < kMinDegree || c.order > kMaxDegree)
    throw ConfigError("order must be in [1, 6], got " + std::to_string(c.order));
  if (!(c.cfl > 0.0) || c.cfl > 1.0) throw ConfigError("cfl must be in (0, 1]");
  if (c.t_end && !(*c.t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
  if (c.frame_interval < 0.0) throw ConfigError("frame_interval must be non-negative");
  for (int l : c.levels)
    if (l < 1) throw ConfigError("convergence levels must be positive");
}

/// key=value lines, '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> read_config_entries(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(number) + ": expected key=value");
    out.emplace_back(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  return out;
}

/// Defaults, then the file entries, then the flag entries; later wins.
inline RunConfig parse_config(const std::vector<std::pair<std::string, std::string>>& flags,
                              std::istream* file = nullptr) {
  RunConfig c;
  if (file)
    for (const auto& [k, v] : read_config_entries(*file)) set_config_value(c, k, v);
  for (const auto& [k, v] : flags) set_config_value(c, k, v);
  validate(c);
  return c;
}

inline RunConfig parse_config(const std::vector<std::pair<std::string, std::string>>& flags,
                              const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file.string());
  return parse_config(flags, &in);
}

/// Builds the mesh named by `spec` for case `c`.
inline Mesh make_mesh(const std::string& spec, const CaseSpec& c) {
  if (spec.empty()) return generate_grid(case_grid(c, c.default_nx, c.default_ny));
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  if (colon == std::string::npos || (kind != "grid" && kind != "strip"))
    return load_mesh(spec);
  const auto parts = detail::split(spec.substr(colon + 1), ':');
  if (parts.empty()) throw ConfigError("mesh spec '" + spec + "' lacks NXxNY");
  const auto dims = detail::split(parts[0], 'x');
  if (dims.size() != 2) throw ConfigError("mesh spec '" + spec + "': expected NXxNY");
  GridSpec g = case_grid(c, detail::to_int("mesh", dims[0]), detail::to_int("mesh", dims[1]));
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos) throw ConfigError("mesh option '" + parts[i] + "' needs a value");
    const std::string k = parts[i].substr(0, eq), v = parts[i].substr(eq + 1);
    if (k == "jitter")
      g.jitter = detail::to_double("jitter", v);
    else if (k == "seed")
      g.seed = static_cast<std::uint64_t>(detail::to_int("seed", v));
    else if (k == "rotate")
      g.rotate = detail::to_bool("rotate", v);
    else
      throw ConfigError("unknown mesh option '" + k + "'");
  }
  return generate_grid(g);
}

}  // namespace cprsc

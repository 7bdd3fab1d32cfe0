#pragma once

// Experiment configuration: built-in defaults per experiment, an INI-style
// key = value file, and command-line overrides, in that order.

#include <pdsc/errors.hpp>
#include <pdsc/geometry.hpp>
#include <pdsc/material.hpp>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace pdsc::bench {

enum class Experiment { tension, clamped, indent, calibrate };

inline const char* to_string(Experiment e) {
  switch (e) {
  case Experiment::tension: return "tension";
  case Experiment::clamped: return "clamped";
  case Experiment::indent: return "indent";
  case Experiment::calibrate: return "calibrate";
  }
  return "?";
}

inline Experiment parse_experiment(const std::string& s) {
  for (auto e : {Experiment::tension, Experiment::clamped, Experiment::indent, Experiment::calibrate})
    if (s == to_string(e))
      return e;
  throw ConfigError("unknown experiment '" + s + "'");
}

inline std::vector<std::string> allowed_variants(Experiment e) {
  switch (e) {
  case Experiment::tension: return {"uncorrected", "corrected"};
  case Experiment::clamped:
    return {"fem", "uncorrected", "corrected", "virtual_nodes", "virtual_nodes_corrected_sides"};
  case Experiment::indent: return {"fem", "uncorrected", "corrected"};
  case Experiment::calibrate: return {};
  }
  return {};
}

struct ExperimentConfig {
  Experiment experiment = Experiment::tension;

  double youngs = 1000.0;  // MPa
  double thickness = 1.0;  // mm
  ProfileKind profile = ProfileKind::constant;
  CalibrationMode calibration = CalibrationMode::discrete;
  VolumeRule volumes = VolumeRule::clipped_cell;

  double spacing = 1.0; // mm
  double horizon = 5.0; // mm
  std::optional<double> m_ratio;

  double width = 50.0;  // mm
  double height = 100.0;

  // tension
  double traction = 1.0; // MPa
  /// Moduli for the analytic reference: "lattice" (bulk values realised by
  /// the node lattice) or "nominal" (E, nu = 1/3).
  std::string analytic_moduli = "lattice";
  double tol_zero = 1e-12;

  // clamped
  double strain = 0.01;
  int buffer_layers = 0; ///< 0 selects round(horizon / spacing)
  std::optional<double> buffer_displacement;

  // indent
  double radius = 15.0;
  double max_depth = 2.0;
  int increments = 100;

  double tolerance = 1e-10;
  int max_iterations = 0;

  std::vector<std::string> variants;
  std::string out_dir;
  bool dump_bonds = false;

  double m() const { return spacing / horizon; }
  int layers() const {
    return buffer_layers > 0 ? buffer_layers : static_cast<int>(std::lround(horizon / spacing));
  }
  /// Rigid displacement of the buffer rows; the default is
  /// strain * 2 horizon (1 + 1/12), the setting used for the clamped sheet.
  double buffer_u() const {
    return buffer_displacement ? *buffer_displacement : strain * 2.0 * horizon * (1.0 + 1.0 / 12.0);
  }
  bool has_variant(const std::string& v) const {
    return std::find(variants.begin(), variants.end(), v) != variants.end();
  }

  void validate() const;
};

inline ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
  case Experiment::tension:
    c.spacing = 1.0;
    c.horizon = 5.0;
    c.width = 50.0;
    c.height = 100.0;
    break;
  case Experiment::clamped:
    c.spacing = 1.0;
    c.horizon = 6.0;
    c.width = 24.0;
    c.height = 24.0;
    break;
  case Experiment::indent:
    c.spacing = 0.25;
    c.horizon = 1.5;
    c.width = 40.0;
    c.height = 40.0;
    break;
  case Experiment::calibrate:
    c.spacing = 1.0;
    c.horizon = 5.0;
    break;
  }
  c.variants = allowed_variants(e);
  return c;
}

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty())
      out.push_back(item);
  }
  return out;
}

inline double to_number(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size())
      throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' expects a number, got '" + v + "'");
  }
}

inline int to_int(const std::string& key, const std::string& v) {
  const double x = to_number(key, v);
  if (x != std::floor(x))
    throw ConfigError("key '" + key + "' expects an integer, got '" + v + "'");
  return static_cast<int>(x);
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes")
    return true;
  if (v == "false" || v == "0" || v == "no")
    return false;
  throw ConfigError("key '" + key + "' expects a boolean, got '" + v + "'");
}

} // namespace detail

/// Applies one key = value setting.
inline void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value) {
  using namespace detail;
  if (key == "youngs") c.youngs = to_number(key, value);
  else if (key == "thickness") c.thickness = to_number(key, value);
  else if (key == "profile") c.profile = parse_profile(value);
  else if (key == "calibration") c.calibration = parse_calibration(value);
  else if (key == "volumes") {
    if (value == "clipped") c.volumes = VolumeRule::clipped_cell;
    else if (value == "full") c.volumes = VolumeRule::full_cell;
    else throw ConfigError("volumes must be 'clipped' or 'full'");
  }
  else if (key == "spacing") c.spacing = to_number(key, value);
  else if (key == "horizon") c.horizon = to_number(key, value);
  else if (key == "m") c.m_ratio = to_number(key, value);
  else if (key == "width") c.width = to_number(key, value);
  else if (key == "height") c.height = to_number(key, value);
  else if (key == "traction") c.traction = to_number(key, value);
  else if (key == "analytic_moduli") {
    if (value != "lattice" && value != "nominal")
      throw ConfigError("analytic_moduli must be 'lattice' or 'nominal'");
    c.analytic_moduli = value;
  }
  else if (key == "tol_zero") c.tol_zero = to_number(key, value);
  else if (key == "strain") c.strain = to_number(key, value);
  else if (key == "buffer_layers") c.buffer_layers = to_int(key, value);
  else if (key == "buffer_displacement") c.buffer_displacement = to_number(key, value);
  else if (key == "radius") c.radius = to_number(key, value);
  else if (key == "max_depth") c.max_depth = to_number(key, value);
  else if (key == "increments") c.increments = to_int(key, value);
  else if (key == "tolerance") c.tolerance = to_number(key, value);
  else if (key == "max_iterations") c.max_iterations = to_int(key, value);
  else if (key == "variants") c.variants = split_list(value);
  else if (key == "out") c.out_dir = value;
  else if (key == "dump_bonds") c.dump_bonds = to_bool(key, value);
  else if (key == "experiment") {
    if (parse_experiment(value) != c.experiment)
      throw ConfigError("config file is for experiment '" + value + "', not '" +
                        to_string(c.experiment) + "'");
  }
  else throw ConfigError("unknown config key '" + key + "'");
}

/// Parses "key=value".
inline void apply_override(ExperimentConfig& c, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  apply_setting(c, assignment.substr(0, eq), assignment.substr(eq + 1));
}

inline void apply_file(ExperimentConfig& c, const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  for (const auto& [key, node] : tree) {
    if (!node.empty())
      throw ConfigError("config sections are not supported ('" + key + "')");
    apply_setting(c, key, node.data());
  }
}

inline void ExperimentConfig::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError(std::string(what) + " must be positive");
  };
  positive(youngs, "youngs");
  positive(thickness, "thickness");
  positive(spacing, "spacing");
  positive(horizon, "horizon");
  if (m_ratio && std::abs(*m_ratio - m()) > 1e-9 * m())
    throw ConfigError("m = " + std::to_string(*m_ratio) + " is inconsistent with spacing/horizon = " +
                      std::to_string(m()));
  if (experiment == Experiment::calibrate)
    return;
  positive(width, "width");
  positive(height, "height");
  for (double len : {width, height}) {
    const double cells = len / spacing;
    if (std::abs(cells - std::round(cells)) > 1e-9 * cells)
      throw ConfigError("spacing must divide the sample edge lengths");
  }
  if (!(tolerance > 0.0) || max_iterations < 0)
    throw ConfigError("solver tolerance must be positive and max_iterations non-negative");
  if (variants.empty())
    throw ConfigError("no variants selected");
  const auto allowed = allowed_variants(experiment);
  std::set<std::string> seen;
  for (const auto& v : variants) {
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
      throw ConfigError("variant '" + v + "' is not available for experiment '" +
                        to_string(experiment) + "'");
    if (!seen.insert(v).second)
      throw ConfigError("variant '" + v + "' listed twice");
  }
  if (experiment == Experiment::clamped) {
    if (buffer_layers < 0)
      throw ConfigError("buffer_layers must be non-negative");
    if (!std::isfinite(strain))
      throw ConfigError("strain must be finite");
  }
  if (experiment == Experiment::indent) {
    positive(radius, "radius");
    if (!(max_depth >= 0.0))
      throw ConfigError("max_depth must be non-negative");
    if (increments < 1)
      throw ConfigError("increments must be at least 1");
  }
}

} // namespace pdsc::bench

#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>

#include "sqslab/dielectric.hpp"
#include "sqslab/emission.hpp"
#include "sqslab/errors.hpp"
#include "sqslab/grid.hpp"
#include "sqslab/slab.hpp"
#include "sqslab/squeezing.hpp"

namespace sqslab {

enum class MediumModel { lorentz, table };

// Fully validated run description.  Built by load_config from the sectioned
// key-value format documented in the README; every field has either a value
// from the file or its documented default.
struct RunConfig {
  // [grid]
  double e_min_ev = 0.0;
  double e_max_ev = 0.0;
  std::size_t samples = 0;

  // [slab]
  double thickness_um = 0.0;

  // [medium]
  MediumModel medium = MediumModel::lorentz;
  LorentzModel lorentz;
  std::string table_path;  // resolved against the config file's directory

  // [emission]
  EmissionState emission{300.0, 0.0};

  // [squeeze]
  SqueezeInput squeeze{0.0, 0.0, 0.0};

  // [output]
  std::string output_dir = ".";
  bool emit_plot = true;

  // [thresholds]
  double lasing_guard = default_lasing_guard;
  double crossover_window = default_crossover_window;

  FrequencyGrid make_grid() const {
    return FrequencyGrid::linspace(e_min_ev, e_max_ev, samples);
  }

  SlabGeometry geometry() const { return SlabGeometry{thickness_um * 1e-6}; }

  DielectricResponse make_response() const {
    const FrequencyGrid grid = make_grid();
    if (medium == MediumModel::lorentz)
      return DielectricResponse::from_lorentz(lorentz, grid);
    return DielectricResponse::from_table(load_susceptibility_table(table_path), grid);
  }
};

namespace detail {

struct ConfigEntry {
  std::string value;
  std::size_t line = 0;
  bool consumed = false;
};

class ConfigMap {
 public:
  ConfigMap(std::map<std::string, ConfigEntry> entries, std::string path)
      : entries_(std::move(entries)), path_(std::move(path)) {}

  bool has(const std::string& key) { return entries_.count(key) != 0; }

  std::string raw(const std::string& key) {
    auto& e = entries_.at(key);
    e.consumed = true;
    return e.value;
  }

  double number(const std::string& key) {
    auto& e = entries_.at(key);
    e.consumed = true;
    try {
      std::size_t used = 0;
      const double v = std::stod(e.value, &used);
      if (used != e.value.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ParseError(path_ + ":" + std::to_string(e.line) + ": key '" + key +
                       "': expected a number, got '" + e.value + "'");
    }
  }

  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  std::size_t count_value(const std::string& key) {
    const double v = number(key);
    if (!(v >= 2.0) || v != std::floor(v) || v > 1e9)
      throw ValidationError("grid: count must be an integer >= 2");
    return static_cast<std::size_t>(v);
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    auto& e = entries_.at(key);
    e.consumed = true;
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    throw ParseError(path_ + ":" + std::to_string(e.line) + ": key '" + key +
                     "': expected true or false, got '" + e.value + "'");
  }

  void require(const std::string& key, const char* invariant) {
    if (!has(key)) throw ValidationError(std::string(invariant));
  }

  void reject_unconsumed() {
    for (const auto& [key, entry] : entries_)
      if (!entry.consumed)
        throw ParseError(path_ + ":" + std::to_string(entry.line) + ": unknown key '" +
                         key + "'");
  }

 private:
  std::map<std::string, ConfigEntry> entries_;
  std::string path_;
};

inline std::string strip(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline ConfigMap read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config: cannot open " + path);

  static const char* known_sections[] = {"grid",    "slab",   "medium",    "emission",
                                         "squeeze", "output", "thresholds"};
  std::map<std::string, ConfigEntry> entries;
  std::string section;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    const std::string text = strip(line);
    if (text.empty()) continue;

    if (text.front() == '[') {
      if (text.back() != ']')
        throw ParseError(path + ":" + std::to_string(lineno) + ": malformed section header");
      section = strip(text.substr(1, text.size() - 2));
      bool known = false;
      for (const char* s : known_sections) known = known || section == s;
      if (!known)
        throw ParseError(path + ":" + std::to_string(lineno) + ": unknown section '[" +
                         section + "]'");
      continue;
    }

    const auto eq = text.find('=');
    if (eq == std::string::npos || section.empty())
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": expected 'key = value' inside a [section]");
    const std::string key = section + "." + strip(text.substr(0, eq));
    const std::string value = strip(text.substr(eq + 1));
    if (entries.count(key))
      throw ParseError(path + ":" + std::to_string(lineno) + ": duplicate key '" + key +
                       "'");
    entries[key] = ConfigEntry{value, lineno, false};
  }
  return ConfigMap(std::move(entries), path);
}

}  // namespace detail

inline RunConfig load_config(const std::string& path) {
  detail::ConfigMap kv = detail::read_key_values(path);
  RunConfig config;

  kv.require("grid.e_min", "grid: e_min is required");
  kv.require("grid.e_max", "grid: e_max is required");
  kv.require("grid.count", "grid: count is required");
  config.e_min_ev = kv.number("grid.e_min");
  config.e_max_ev = kv.number("grid.e_max");
  config.samples = kv.count_value("grid.count");

  kv.require("slab.thickness_um", "slab: thickness_um is required");
  config.thickness_um = kv.number("slab.thickness_um");

  kv.require("medium.model", "medium: model is required (lorentz or table)");
  const std::string model = kv.raw("medium.model");
  if (model == "lorentz") {
    config.medium = MediumModel::lorentz;
    kv.require("medium.resonance_ev", "medium: lorentz resonance_ev is required");
    kv.require("medium.linewidth_ev", "medium: lorentz linewidth_ev is required");
    config.lorentz.resonance_ev = kv.number("medium.resonance_ev");
    config.lorentz.linewidth_ev = kv.number("medium.linewidth_ev");
    // default oscillator strength puts the peak of chi'' at 1
    config.lorentz.strength_ev2 =
        kv.number_or("medium.strength_ev2",
                     config.lorentz.linewidth_ev * config.lorentz.resonance_ev);
  } else if (model == "table") {
    config.medium = MediumModel::table;
    kv.require("medium.path", "medium: table path is required");
    const std::filesystem::path config_dir =
        std::filesystem::path(path).parent_path();
    std::filesystem::path table = kv.raw("medium.path");
    if (table.is_relative()) table = config_dir / table;
    if (!std::filesystem::exists(table))
      throw ParseError("config: susceptibility table not found: " + table.string());
    config.table_path = table.string();
  } else {
    throw ValidationError("medium: model must be lorentz or table, got '" + model + "'");
  }

  config.emission.temperature_k = kv.number_or("emission.temperature_k", 300.0);
  config.emission.mu_ev = kv.number_or("emission.mu_ev", 0.0);

  config.squeeze.magnitude = kv.number_or("squeeze.magnitude", 0.0);
  config.squeeze.phase_rad = wrap_two_pi(kv.number_or("squeeze.phase_rad", 0.0));
  config.squeeze.carrier_ev = kv.number_or(
      "squeeze.carrier_ev", 0.5 * (config.e_min_ev + config.e_max_ev));

  if (kv.has("output.directory")) config.output_dir = kv.raw("output.directory");
  config.emit_plot = kv.boolean("output.emit_plot", true);

  config.lasing_guard = kv.number_or("thresholds.lasing_guard", default_lasing_guard);
  config.crossover_window =
      kv.number_or("thresholds.crossover_window", default_crossover_window);

  kv.reject_unconsumed();

  // cross-field invariants
  if (!(config.e_min_ev > 0.0) || !std::isfinite(config.e_min_ev))
    throw ValidationError("grid: e_min must be finite and > 0");
  if (!(config.e_min_ev < config.e_max_ev) || !std::isfinite(config.e_max_ev))
    throw ValidationError("grid: e_min must be < e_max");
  if (!(config.thickness_um > 0.0) || !std::isfinite(config.thickness_um))
    throw ValidationError("slab: thickness_um must be finite and > 0");
  if (config.medium == MediumModel::lorentz) config.lorentz.validate();
  config.emission.validate();
  if (!(config.squeeze.magnitude >= 0.0) || !std::isfinite(config.squeeze.magnitude))
    throw ValidationError("squeeze: magnitude must be finite and >= 0");
  if (!(config.squeeze.carrier_ev >= config.e_min_ev) ||
      !(config.squeeze.carrier_ev <= config.e_max_ev))
    throw ValidationError("squeeze: carrier_ev must lie inside the grid span");
  if (!(config.lasing_guard > 0.0))
    throw ValidationError("thresholds: lasing_guard must be > 0");
  if (!(config.crossover_window > 0.0))
    throw ValidationError("thresholds: crossover_window must be > 0");

  return config;
}

}  // namespace sqslab

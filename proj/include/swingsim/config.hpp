#ifndef SWINGSIM_CONFIG_HPP
#define SWINGSIM_CONFIG_HPP

#include <string>
#include <vector>

#include "swingsim/simulator.hpp"

namespace swingsim {

// Textual run configuration: `key = value` lines under `[section]` headers,
// `#` comments, every key optional with baseline-platform defaults. Keys may
// also be written fully dotted (`gait.omega_in = 1.17`) outside a section.
struct RunConfig {
  RobotParams robot;
  TerrainParams terrain;
  GaitConfig gait;
  ControllerConfig controller;
  PathDef path;
  double duration_s = 10.0;
  double dt_s = 1e-3;
  int record_stride = 10;
  WheelMode mode = WheelMode::Forward;
  double initial_velocity = 0.0;

  static RunConfig defaults() { return RunConfig{}; }

  // Throws ParseError with a line number on syntax/unknown-key problems.
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& file_path);

  // Sets a single dotted key from its textual value.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;

  // Canonical text that reparses to an identical config.
  std::string dump() const;

  // Validates every invariant; error messages name the offending key.
  void validate() const;

  // Scenario with this config's physics; controller/path attach separately.
  Scenario scenario() const;
};

struct ConfigKeyDoc {
  std::string key;
  std::string doc;
};

// Every recognized key with its unit/description line, in dump order.
std::vector<ConfigKeyDoc> config_key_docs();

}  // namespace swingsim

#endif

#include "swingsim/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace swingsim {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  char* end = nullptr;
  const double parsed = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(parsed)) {
    throw ParseError(key + ": expected a finite number, got '" + value + "'");
  }
  return parsed;
}

int parse_int(const std::string& key, const std::string& value) {
  const double d = parse_double(key, value);
  const int i = static_cast<int>(std::llround(d));
  if (d != static_cast<double>(i)) {
    throw ParseError(key + ": expected an integer, got '" + value + "'");
  }
  return i;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = lower(trim(value));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ParseError(key + ": expected true/false, got '" + value + "'");
}

std::string format_double(double value) {
  // Shortest form that round-trips.
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

constexpr std::array<const char*, 7> kSetLabels = {"NB", "NM", "NS", "ZO",
                                                   "PS", "PM", "PB"};

std::string format_table(const FuzzyConfig::RuleTable& table) {
  std::string out;
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      if (!out.empty()) out += ' ';
      out += kSetLabels[static_cast<std::size_t>(table[i][j] + 3)];
    }
  }
  return out;
}

FuzzyConfig::RuleTable parse_table(const std::string& key, const std::string& value) {
  std::istringstream iss(value);
  FuzzyConfig::RuleTable table{};
  std::string label;
  int count = 0;
  while (iss >> label) {
    if (count >= 49) throw ParseError(key + ": expected exactly 49 set labels");
    const std::string up = [&] {
      std::string u = label;
      std::transform(u.begin(), u.end(), u.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
      return u;
    }();
    int level = -4;
    for (int k = 0; k < 7; ++k) {
      if (up == kSetLabels[static_cast<std::size_t>(k)]) level = k - 3;
    }
    if (level == -4) {
      throw ParseError(key + ": unknown set label '" + label +
                       "' (expected NB NM NS ZO PS PM PB)");
    }
    table[static_cast<std::size_t>(count / 7)][static_cast<std::size_t>(count % 7)] =
        static_cast<std::int8_t>(level);
    ++count;
  }
  if (count != 49) throw ParseError(key + ": expected exactly 49 set labels");
  return table;
}

struct KeyDef {
  const char* key;
  const char* doc;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define NUM_KEY(name, doc, field)                                                   \
  KeyDef {                                                                          \
    name, doc, [](RunConfig& c, const std::string& v) { c.field = parse_double(name, v); }, \
        [](const RunConfig& c) { return format_double(c.field); }                   \
  }

const std::vector<KeyDef>& registry() {
  static const std::vector<KeyDef> keys = {
      NUM_KEY("robot.platform_weight", "supporting platform weight [N]", robot.platform_weight),
      NUM_KEY("robot.leg_weight", "weight of one leg [N]", robot.leg_weight),
      NUM_KEY("robot.head_link_length", "hip-to-head link length [m]", robot.head_link_length),
      NUM_KEY("robot.leg_length", "hip-to-wheel leg length [m]", robot.leg_length),
      NUM_KEY("robot.front_to_com", "front wheel to barycenter [m]", robot.front_to_com),
      NUM_KEY("robot.com_height", "barycenter height [m]", robot.com_height),
      NUM_KEY("robot.head_link_angle", "fixed head-link angle [rad]", robot.head_link_angle),
      NUM_KEY("robot.tilt_axis_angle", "wheel pivot axis angle vs ground [rad]", robot.tilt_axis_angle),
      NUM_KEY("robot.mu_roll", "rolling friction coefficient [-]", robot.mu_roll),
      NUM_KEY("robot.mu_slide", "sliding friction coefficient [-]", robot.mu_slide),
      NUM_KEY("robot.air_drag", "air drag coefficient [N*s/m]", robot.air_drag),
      NUM_KEY("robot.gravity", "gravitational acceleration [m/s^2]", robot.gravity),
      NUM_KEY("robot.sweep_arm", "wheel lever arm about the hip [m]", robot.sweep_arm),
      KeyDef{"terrain.slope_deg", "uphill-positive slope angle [deg]",
             [](RunConfig& c, const std::string& v) {
               c.terrain.slope = parse_double("terrain.slope_deg", v) * std::numbers::pi / 180.0;
             },
             [](const RunConfig& c) {
               return format_double(c.terrain.slope * 180.0 / std::numbers::pi);
             }},
      KeyDef{"terrain.brake_engaged", "front-wheel brake engaged [bool]",
             [](RunConfig& c, const std::string& v) {
               c.terrain.brake_engaged = parse_bool("terrain.brake_engaged", v);
             },
             [](const RunConfig& c) { return c.terrain.brake_engaged ? "true" : "false"; }},
      NUM_KEY("terrain.mu_brake", "brake friction coefficient [-]", terrain.mu_brake),
      NUM_KEY("gait.phi_min", "inner stroke bound [rad]", gait.phi_min),
      NUM_KEY("gait.phi_max", "outer stroke bound [rad]", gait.phi_max),
      NUM_KEY("gait.omega_in", "inward stroke rate [rad/s]", gait.omega_in),
      NUM_KEY("gait.omega_out", "outward stroke rate [rad/s]", gait.omega_out),
      NUM_KEY("gait.pause_s", "dwell between strokes [s]", gait.pause_s),
      KeyDef{"gait.pause_placement", "before_inward | before_both",
             [](RunConfig& c, const std::string& v) {
               const std::string m = lower(trim(v));
               if (m == "before_inward") {
                 c.gait.pause_placement = PausePlacement::BeforeInward;
               } else if (m == "before_both") {
                 c.gait.pause_placement = PausePlacement::BeforeBoth;
               } else {
                 throw ParseError("gait.pause_placement: expected before_inward or before_both");
               }
             },
             [](const RunConfig& c) {
               return c.gait.pause_placement == PausePlacement::BeforeBoth
                          ? "before_both"
                          : "before_inward";
             }},
      NUM_KEY("sim.duration_s", "run length [s]", duration_s),
      NUM_KEY("sim.dt_s", "integration step [s]", dt_s),
      KeyDef{"sim.record_stride", "steps between recorded rows",
             [](RunConfig& c, const std::string& v) {
               c.record_stride = parse_int("sim.record_stride", v);
             },
             [](const RunConfig& c) { return std::to_string(c.record_stride); }},
      KeyDef{"sim.wheel_mode", "forward | reversed",
             [](RunConfig& c, const std::string& v) {
               const std::string m = lower(trim(v));
               if (m == "forward") {
                 c.mode = WheelMode::Forward;
               } else if (m == "reversed") {
                 c.mode = WheelMode::Reversed;
               } else {
                 throw ParseError("sim.wheel_mode: expected forward or reversed");
               }
             },
             [](const RunConfig& c) {
               return c.mode == WheelMode::Reversed ? "reversed" : "forward";
             }},
      NUM_KEY("sim.initial_velocity", "starting platform velocity [m/s]", initial_velocity),
      NUM_KEY("pid.kp", "outer-loop proportional gain", controller.fuzzy.base_gains.kp),
      NUM_KEY("pid.ki", "outer-loop integral gain", controller.fuzzy.base_gains.ki),
      NUM_KEY("pid.kd", "outer-loop derivative gain", controller.fuzzy.base_gains.kd),
      NUM_KEY("pid.output_min", "stroke-rate command floor [rad/s]", controller.fuzzy.base_gains.output_min),
      NUM_KEY("pid.output_max", "stroke-rate command ceiling [rad/s]", controller.fuzzy.base_gains.output_max),
      NUM_KEY("pid.integral_limit", "anti-windup bound", controller.fuzzy.base_gains.integral_limit),
      KeyDef{"fuzzy.error_span", "velocity-error universe half width [m/s]",
             [](RunConfig& c, const std::string& v) {
               c.controller.fuzzy.error_centers =
                   uniform_fuzzy_centers(parse_double("fuzzy.error_span", v));
             },
             [](const RunConfig& c) {
               return format_double(c.controller.fuzzy.error_centers.back());
             }},
      KeyDef{"fuzzy.derror_span", "error-rate universe half width [m/s^2]",
             [](RunConfig& c, const std::string& v) {
               c.controller.fuzzy.derror_centers =
                   uniform_fuzzy_centers(parse_double("fuzzy.derror_span", v));
             },
             [](const RunConfig& c) {
               return format_double(c.controller.fuzzy.derror_centers.back());
             }},
      NUM_KEY("fuzzy.delta_kp", "kp adjustment half range", controller.fuzzy.delta_kp_span),
      NUM_KEY("fuzzy.delta_ki", "ki adjustment half range", controller.fuzzy.delta_ki_span),
      NUM_KEY("fuzzy.delta_kd", "kd adjustment half range", controller.fuzzy.delta_kd_span),
      KeyDef{"fuzzy.rules_kp", "49 set labels, row-major over (error, derror)",
             [](RunConfig& c, const std::string& v) {
               c.controller.fuzzy.rules_kp = parse_table("fuzzy.rules_kp", v);
             },
             [](const RunConfig& c) { return format_table(c.controller.fuzzy.rules_kp); }},
      KeyDef{"fuzzy.rules_ki", "49 set labels, row-major over (error, derror)",
             [](RunConfig& c, const std::string& v) {
               c.controller.fuzzy.rules_ki = parse_table("fuzzy.rules_ki", v);
             },
             [](const RunConfig& c) { return format_table(c.controller.fuzzy.rules_ki); }},
      KeyDef{"fuzzy.rules_kd", "49 set labels, row-major over (error, derror)",
             [](RunConfig& c, const std::string& v) {
               c.controller.fuzzy.rules_kd = parse_table("fuzzy.rules_kd", v);
             },
             [](const RunConfig& c) { return format_table(c.controller.fuzzy.rules_kd); }},
      NUM_KEY("motor.time_constant", "stroke-rate servo lag [s]", controller.motor.time_constant),
      NUM_KEY("motor.rate_limit", "stroke-rate slew limit [rad/s^2]", controller.motor.rate_limit),
      NUM_KEY("controller.sample_time_s", "control period [s]", controller.sample_time_s),
      NUM_KEY("controller.measure_window_s", "speed averaging window [s]", controller.measure_window_s),
      NUM_KEY("steering.k_steer", "yaw-rate gain [1/m]", controller.steering.k_steer),
      NUM_KEY("steering.gamma_max", "rudder clamp [rad]", controller.steering.gamma_max),
      NUM_KEY("steering.lookahead", "sensor lookahead [m]", controller.steering.lookahead_m),
      NUM_KEY("steering.lateral_kp", "lateral P gain [rad/m]", controller.steering.lateral_kp),
      NUM_KEY("steering.lateral_kd", "lateral D gain [rad*s/m]", controller.steering.lateral_kd),
      NUM_KEY("steering.sensor_half_span", "line sensor half width [m]", controller.steering.sensor_half_span),
      KeyDef{"path.kind", "figure8 | line | circle",
             [](RunConfig& c, const std::string& v) {
               const std::string m = lower(trim(v));
               if (m == "figure8") {
                 c.path.kind = PathDef::Kind::FigureEight;
               } else if (m == "line") {
                 c.path.kind = PathDef::Kind::Line;
               } else if (m == "circle") {
                 c.path.kind = PathDef::Kind::Circle;
               } else {
                 throw ParseError("path.kind: expected figure8, line or circle");
               }
             },
             [](const RunConfig& c) {
               switch (c.path.kind) {
                 case PathDef::Kind::Line:
                   return "line";
                 case PathDef::Kind::Circle:
                   return "circle";
                 case PathDef::Kind::FigureEight:
                   break;
               }
               return "figure8";
             }},
      NUM_KEY("path.scale", "path size parameter [m]", path.scale_m),
      NUM_KEY("path.center_x", "path center x [m]", path.center_x),
      NUM_KEY("path.center_y", "path center y [m]", path.center_y),
  };
  return keys;
}

#undef NUM_KEY

const KeyDef* find_key(const std::string& key) {
  for (const auto& def : registry()) {
    if (key == def.key) return &def;
  }
  return nullptr;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  const KeyDef* def = find_key(key);
  if (!def) throw ParseError("unknown config key '" + key + "'");
  def->set(*this, value);
}

std::string RunConfig::get(const std::string& key) const {
  const KeyDef* def = find_key(key);
  if (!def) throw ParseError("unknown config key '" + key + "'");
  return def->get(*this);
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig config;
  std::istringstream stream(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError("line " + std::to_string(line_no) + ": unterminated section header");
      }
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) {
        throw ParseError("line " + std::to_string(line_no) + ": empty section name");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": missing key before '='");
    }
    if (key.find('.') == std::string::npos) {
      if (section.empty()) {
        throw ParseError("line " + std::to_string(line_no) + ": key '" + key +
                         "' outside any [section]");
      }
      key = section + "." + key;
    }
    try {
      config.set(key, value);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

RunConfig RunConfig::load(const std::string& file_path) {
  std::ifstream file(file_path, std::ios::binary);
  if (!file) throw Error("cannot open config file: " + file_path);
  std::ostringstream oss;
  oss << file.rdbuf();
  return parse(oss.str());
}

std::string RunConfig::dump() const {
  std::string out;
  std::string section;
  for (const auto& def : registry()) {
    const std::string key = def.key;
    const std::size_t dot = key.find('.');
    const std::string sec = key.substr(0, dot);
    if (sec != section) {
      if (!out.empty()) out += '\n';
      out += '[' + sec + "]\n";
      section = sec;
    }
    out += key.substr(dot + 1) + " = " + def.get(*this) + '\n';
  }
  return out;
}

void RunConfig::validate() const {
  Scenario s = scenario();
  s.validate();
  controller.validate();
  path.validate();
}

Scenario RunConfig::scenario() const {
  Scenario s;
  s.robot = robot;
  s.terrain = terrain;
  s.gait = gait;
  s.mode = mode;
  s.duration_s = duration_s;
  s.dt_s = dt_s;
  s.record_stride = record_stride;
  s.initial_velocity = initial_velocity;
  return s;
}

std::vector<ConfigKeyDoc> config_key_docs() {
  std::vector<ConfigKeyDoc> docs;
  docs.reserve(registry().size());
  for (const auto& def : registry()) docs.push_back({def.key, def.doc});
  return docs;
}

}  // namespace swingsim

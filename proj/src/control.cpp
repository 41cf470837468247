#include "swingsim/control.hpp"

#include <algorithm>
#include <cmath>

namespace swingsim {

namespace {

constexpr int kCentroidSamples = 241;

// Membership of x in triangle k of a 7-set family with the given centers.
// The outer sets shoulder off to infinity so the universe is fully covered.
double triangle_membership(double x, const std::array<double, 7>& centers, int k) {
  const double c = centers[static_cast<std::size_t>(k)];
  if (x == c) return 1.0;
  if (x < c) {
    if (k == 0) return 1.0;
    const double lo = centers[static_cast<std::size_t>(k - 1)];
    if (x <= lo) return 0.0;
    return (x - lo) / (c - lo);
  }
  if (k == 6) return 1.0;
  const double hi = centers[static_cast<std::size_t>(k + 1)];
  if (x >= hi) return 0.0;
  return (hi - x) / (hi - c);
}

std::array<double, 7> fuzzify(double x, const std::array<double, 7>& centers) {
  const double clamped = std::clamp(x, centers.front(), centers.back());
  std::array<double, 7> mu{};
  for (int k = 0; k < 7; ++k) mu[static_cast<std::size_t>(k)] = triangle_membership(clamped, centers, k);
  return mu;
}

std::array<double, 7> uniform_centers(double span) {
  std::array<double, 7> c{};
  for (int k = -3; k <= 3; ++k) c[static_cast<std::size_t>(k + 3)] = span * k / 3.0;
  return c;
}

// Activation weight per output set under max-min composition.
std::array<double, 7> rule_activations(const std::array<double, 7>& mu_e,
                                       const std::array<double, 7>& mu_de,
                                       const FuzzyConfig::RuleTable& table) {
  std::array<double, 7> w{};
  for (std::size_t i = 0; i < 7; ++i) {
    if (mu_e[i] == 0.0) continue;
    for (std::size_t j = 0; j < 7; ++j) {
      if (mu_de[j] == 0.0) continue;
      const auto out = static_cast<std::size_t>(table[i][j] + 3);
      w[out] = std::max(w[out], std::min(mu_e[i], mu_de[j]));
    }
  }
  return w;
}

// Centroid of the clipped output sets over [-span, span]. The sample grid is
// symmetric about zero so odd rule tables defuzzify to an odd map.
double centroid(const std::array<double, 7>& w, double span) {
  if (span == 0.0) return 0.0;
  const auto centers = uniform_centers(span);
  double num = 0.0;
  double den = 0.0;
  for (int s = 0; s < kCentroidSamples; ++s) {
    const double x = -span + 2.0 * span * s / (kCentroidSamples - 1);
    double mu = 0.0;
    for (int k = 0; k < 7; ++k) {
      mu = std::max(mu, std::min(w[static_cast<std::size_t>(k)],
                                 triangle_membership(x, centers, k)));
    }
    num += x * mu;
    den += mu;
  }
  return den > 1e-12 ? num / den : 0.0;
}

// Default 7x7 tables: clamp(round(a*i + b*j)) over set indices, rounding half
// away from zero. Odd-symmetric with a zero center by construction.
FuzzyConfig::RuleTable scheduling_table(double a, double b) {
  FuzzyConfig::RuleTable table{};
  for (int i = -3; i <= 3; ++i) {
    for (int j = -3; j <= 3; ++j) {
      const double v = a * i + b * j;
      const int rounded = static_cast<int>(std::floor(std::abs(v) + 0.5)) * (v < 0.0 ? -1 : 1);
      table[static_cast<std::size_t>(i + 3)][static_cast<std::size_t>(j + 3)] =
          static_cast<std::int8_t>(std::clamp(rounded, -3, 3));
    }
  }
  return table;
}

void check_centers(const std::array<double, 7>& centers, const char* name) {
  for (std::size_t k = 1; k < 7; ++k) {
    if (!(centers[k] > centers[k - 1])) {
      throw ConfigError(std::string(name) + " centers must be strictly increasing");
    }
  }
}

void check_table(const FuzzyConfig::RuleTable& table, const char* name) {
  for (const auto& row : table) {
    for (const auto cell : row) {
      if (cell < -3 || cell > 3) {
        throw ConfigError(std::string(name) + " rule entries must lie in [-3, 3]");
      }
    }
  }
}

}  // namespace

std::array<double, 7> uniform_fuzzy_centers(double span) { return uniform_centers(span); }

void PidGains::validate() const {
  if (!(output_min < output_max)) {
    throw ConfigError("pid.output_min must be smaller than pid.output_max");
  }
  if (!std::isfinite(kp) || !std::isfinite(ki) || !std::isfinite(kd)) {
    throw ConfigError("pid gains must be finite");
  }
  if (!(integral_limit > 0.0)) throw ConfigError("pid.integral_limit must be positive");
}

FuzzyConfig FuzzyConfig::defaults() {
  FuzzyConfig cfg;
  cfg.error_centers = uniform_centers(0.5);
  cfg.derror_centers = uniform_centers(2.0);
  cfg.rules_kp = scheduling_table(1.0, 0.5);
  cfg.rules_ki = scheduling_table(1.0, 0.25);
  cfg.rules_kd = scheduling_table(0.25, 1.0);
  return cfg;
}

void FuzzyConfig::validate() const {
  check_centers(error_centers, "fuzzy.error");
  check_centers(derror_centers, "fuzzy.derror");
  if (delta_kp_span < 0.0 || delta_ki_span < 0.0 || delta_kd_span < 0.0) {
    throw ConfigError("fuzzy delta spans must be nonnegative");
  }
  check_table(rules_kp, "fuzzy.rules_kp");
  check_table(rules_ki, "fuzzy.rules_ki");
  check_table(rules_kd, "fuzzy.rules_kd");
  base_gains.validate();
}

GainDeltas fuzzy_adjust(double error, double derror, const FuzzyConfig& config) {
  const auto mu_e = fuzzify(error, config.error_centers);
  const auto mu_de = fuzzify(derror, config.derror_centers);
  GainDeltas d;
  d.dkp = centroid(rule_activations(mu_e, mu_de, config.rules_kp), config.delta_kp_span);
  d.dki = centroid(rule_activations(mu_e, mu_de, config.rules_ki), config.delta_ki_span);
  d.dkd = centroid(rule_activations(mu_e, mu_de, config.rules_kd), config.delta_kd_span);
  return d;
}

double velocity_controller_step(double target_v, double measured_v, double dt,
                                PidState& state, const FuzzyConfig& config) {
  if (!(dt > 0.0)) throw DomainError("controller: dt must be positive");
  const PidGains& base = config.base_gains;
  const double error = target_v - measured_v;
  const double derror = state.has_prev ? (error - state.prev_error) / dt : 0.0;
  state.prev_error = error;
  state.has_prev = true;

  const GainDeltas d = fuzzy_adjust(error, derror, config);
  const double u = (base.kp + d.dkp) * error + state.integral + (base.kd + d.dkd) * derror;

  // Conditional integration: never wind further into a saturated output.
  const bool saturating = (u > base.output_max && error > 0.0) ||
                          (u < base.output_min && error < 0.0);
  if (!saturating) {
    state.integral += (base.ki + d.dki) * error * dt;
    state.integral =
        std::clamp(state.integral, -base.integral_limit, base.integral_limit);
  }
  return std::clamp(u, base.output_min, base.output_max);
}

void MotorModel::validate() const {
  if (!(time_constant > 0.0)) throw ConfigError("motor.time_constant must be positive");
  if (!(rate_limit > 0.0)) throw ConfigError("motor.rate_limit must be positive");
}

double motor_track(double commanded, double actual, double dt, const MotorModel& model) {
  if (!(dt > 0.0)) throw DomainError("motor_track: dt must be positive");
  const double rate =
      std::clamp((commanded - actual) / model.time_constant, -model.rate_limit,
                 model.rate_limit);
  return actual + rate * dt;
}

void SteeringConfig::validate() const {
  if (!(gamma_max > 0.0 && gamma_max <= std::numbers::pi / 3.0)) {
    throw ConfigError("steering.gamma_max must lie in (0, pi/3]");
  }
  if (!(k_steer > 0.0)) throw ConfigError("steering.k_steer must be positive");
  if (!(lookahead_m > 0.0)) throw ConfigError("steering.lookahead must be positive");
  if (!(sensor_half_span > 0.0)) throw ConfigError("steering.sensor_half_span must be positive");
}

double rudder_yaw_rate(double gamma, double vp, const SteeringConfig& config) {
  return config.k_steer * std::sin(gamma) * vp;
}

void PathDef::validate() const {
  if (!(scale_m > 0.0)) throw ConfigError("path.scale must be positive");
}

Pose path_point(const PathDef& path, double u) {
  Pose p;
  switch (path.kind) {
    case PathDef::Kind::FigureEight:
      // Lemniscate of Gerono.
      p.x = path.center_x + path.scale_m * std::sin(u);
      p.y = path.center_y + path.scale_m * std::sin(u) * std::cos(u);
      p.heading = std::atan2(path.scale_m * std::cos(2.0 * u), path.scale_m * std::cos(u));
      break;
    case PathDef::Kind::Line:
      p.x = path.center_x + u;
      p.y = path.center_y;
      p.heading = 0.0;
      break;
    case PathDef::Kind::Circle:
      p.x = path.center_x + path.scale_m * std::sin(u);
      p.y = path.center_y + path.scale_m * (1.0 - std::cos(u));
      p.heading = std::atan2(std::sin(u), std::cos(u));
      break;
  }
  return p;
}

Pose path_start(const PathDef& path) { return path_point(path, 0.0); }

namespace {

double squared_distance(const PathDef& path, double u, double sx, double sy) {
  const Pose q = path_point(path, u);
  const double dx = q.x - sx;
  const double dy = q.y - sy;
  return dx * dx + dy * dy;
}

// Nearest path parameter to (sx, sy), searched around the previous match so
// the follower stays on its branch through the figure-eight crossing.
double nearest_param(const PathDef& path, double prev_u, double sx, double sy) {
  constexpr double kWindow = 0.36;
  constexpr int kCoarse = 480;
  double best_u = prev_u;
  double best_d = squared_distance(path, prev_u, sx, sy);
  for (int k = -kCoarse; k <= kCoarse; ++k) {
    const double u = prev_u + kWindow * k / kCoarse;
    const double d = squared_distance(path, u, sx, sy);
    if (d < best_d) {
      best_d = d;
      best_u = u;
    }
  }
  double lo = best_u - kWindow / kCoarse;
  double hi = best_u + kWindow / kCoarse;
  for (int iter = 0; iter < 40; ++iter) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (squared_distance(path, m1, sx, sy) < squared_distance(path, m2, sx, sy)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double follow_step(const Pose& pose, const PathDef& path, const SteeringConfig& config,
                   FollowerState& state, double dt) {
  if (!(dt > 0.0)) throw DomainError("follow_step: dt must be positive");
  const double sx = pose.x + config.lookahead_m * std::cos(pose.heading);
  const double sy = pose.y + config.lookahead_m * std::sin(pose.heading);
  state.path_param = nearest_param(path, state.path_param, sx, sy);
  const Pose q = path_point(path, state.path_param);

  // Signed lateral offset of the path in the sensor frame (left positive).
  const double offset = -(q.x - sx) * std::sin(pose.heading) + (q.y - sy) * std::cos(pose.heading);
  if (std::abs(offset) > config.sensor_half_span) {
    throw PathLostError("path left the line-sensor span");
  }
  const double doffset = state.has_prev ? (offset - state.prev_offset) / dt : 0.0;
  state.prev_offset = offset;
  state.has_prev = true;

  const double gamma = config.lateral_kp * offset + config.lateral_kd * doffset;
  return std::clamp(gamma, -config.gamma_max, config.gamma_max);
}

}  // namespace swingsim

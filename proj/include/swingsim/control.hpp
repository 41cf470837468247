#ifndef SWINGSIM_CONTROL_HPP
#define SWINGSIM_CONTROL_HPP

#include <array>
#include <cstdint>
#include <numbers>

#include "swingsim/errors.hpp"

namespace swingsim {

struct PidGains {
  double kp = 1.2;
  double ki = 2.0;
  double kd = 0.03;
  double output_min = 0.78;   // actuation clamp, inward stroke rate [rad/s]
  double output_max = 2.34;
  double integral_limit = 2.34;

  void validate() const;
};

// Gain-scheduling fuzzy stage: seven triangular sets per universe
// (NB NM NS ZO PS PM PB), max-min rule composition, centroid defuzzification.
// Rule tables hold set indices in [-3, 3]; the defaults are odd-symmetric so
// the adjustment is zero at zero error and flips sign with the inputs.
struct FuzzyConfig {
  using RuleTable = std::array<std::array<std::int8_t, 7>, 7>;

  std::array<double, 7> error_centers{};    // [m/s], strictly increasing
  std::array<double, 7> derror_centers{};   // [m/s^2]
  double delta_kp_span = 0.6;
  double delta_ki_span = 1.0;
  double delta_kd_span = 0.02;
  RuleTable rules_kp{};
  RuleTable rules_ki{};
  RuleTable rules_kd{};
  PidGains base_gains;

  static FuzzyConfig defaults();
  void validate() const;
};

// Seven evenly spaced set centers over [-span, span].
std::array<double, 7> uniform_fuzzy_centers(double span);

struct GainDeltas {
  double dkp = 0.0;
  double dki = 0.0;
  double dkd = 0.0;
};

// Mamdani inference over the 7x7 tables. Inputs are clamped into their
// universes; outputs stay inside the configured delta spans.
GainDeltas fuzzy_adjust(double error, double derror, const FuzzyConfig& config);

struct PidState {
  double integral = 0.0;
  double prev_error = 0.0;
  bool has_prev = false;
};

// Outer velocity loop: PID with fuzzy-adjusted gains maps the speed error to
// a commanded inward stroke rate, clamped to [output_min, output_max].
// Integration is suspended while the output saturates further into the clamp.
double velocity_controller_step(double target_v, double measured_v, double dt,
                                PidState& state, const FuzzyConfig& config);

// First-order stroke-rate servo standing in for the motor drive loop.
struct MotorModel {
  double time_constant = 0.05;  // [s]
  double rate_limit = 50.0;     // [rad/s^2]

  void validate() const;
};

double motor_track(double commanded, double actual, double dt, const MotorModel& model);

struct SteeringConfig {
  double k_steer = 2.0 * std::numbers::sqrt2;  // yaw-rate gain [1/m]; 0.5 m turn radius at gamma_max
  double gamma_max = std::numbers::pi / 4.0;         // rudder deflection clamp [rad]
  double lookahead_m = 0.15;
  double lateral_kp = 24.0;   // [rad/m]
  double lateral_kd = 6.0;    // [rad*s/m]
  double sensor_half_span = 0.064;  // line sensor half width [m]

  void validate() const;
};

// Kinematic rudder: yaw rate = k_steer * sin(gamma) * vp. No flow, no moment.
double rudder_yaw_rate(double gamma, double vp, const SteeringConfig& config);

struct PathDef {
  enum class Kind { FigureEight, Line, Circle };
  Kind kind = Kind::FigureEight;
  double scale_m = 2.0;
  double center_x = 0.0;
  double center_y = 0.0;

  void validate() const;
};

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
};

// Point of the reference path at parameter u (figure-eights and circles are
// 2*pi-periodic in u, lines use u as arc length).
Pose path_point(const PathDef& path, double u);

// Pose at u = 0, heading along the path tangent.
Pose path_start(const PathDef& path);

struct FollowerState {
  double path_param = 0.0;
  double prev_offset = 0.0;
  bool has_prev = false;
};

// Line-sensor follower: measures the signed lateral offset of the path at
// lookahead_m ahead of the pose and feeds it through a lateral PD, clamped to
// gamma_max. Throws PathLostError when the offset leaves the sensor span.
double follow_step(const Pose& pose, const PathDef& path, const SteeringConfig& config,
                   FollowerState& state, double dt);

}  // namespace swingsim

#endif

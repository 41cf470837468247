#ifndef SWINGSIM_DYNAMICS_HPP
#define SWINGSIM_DYNAMICS_HPP

#include <numbers>

#include "swingsim/errors.hpp"

namespace swingsim {

// Physical constants of the dual-swing-leg platform. Weights are in newtons,
// lengths in meters, angles in radians. Defaults describe the baseline
// desk-scale robot.
struct RobotParams {
  double platform_weight = 44.1;   // supporting platform weight [N]
  double leg_weight = 7.35;        // weight of one leg [N]
  double head_link_length = 0.25;  // hip-to-head link [m]
  double leg_length = 0.30;        // hip-to-wheel leg [m]
  double front_to_com = 0.12;      // front wheel to platform barycenter [m]
  double com_height = 0.10;        // barycenter height above ground [m]
  double head_link_angle = std::numbers::pi / 9.0;     // fixed head-link angle [rad]
  double tilt_axis_angle = 39.0 * std::numbers::pi / 360.0;  // wheel pivot axis vs ground [rad]
  double mu_roll = 0.02;           // rolling friction coefficient
  double mu_slide = 0.25;          // sliding friction coefficient
  double air_drag = 0.1;           // air drag coefficient [N*s/m]
  double gravity = 9.81;           // [m/s^2]
  double sweep_arm = 0.30;         // effective lever arm of the wheel about the hip [m]

  double total_weight() const { return platform_weight + 2.0 * leg_weight; }

  // Throws DomainError naming the offending field.
  void validate() const;
};

struct TerrainParams {
  double slope = 0.0;          // uphill-positive slope angle [rad]
  bool brake_engaged = false;  // Coulomb brake on the front wheel
  double mu_brake = 0.4;

  void validate() const;
};

enum class WheelMode { Forward, Reversed };

// Below this forward-speed scale the along-leg velocity component is treated
// as degenerate and the deflection saturates.
inline constexpr double kSpeedEpsilon = 1e-6;

// Largest deflection the wheel can hold before sideways slip:
// asin(mu_slide / tan(tilt_axis_angle)). Throws DomainError when
// tan(tilt_axis_angle) < mu_slide.
double slide_limit_beta(const RobotParams& params);

// Wheel deflection during the inward stroke (leg closing, rate omega >= 0).
// Saturates at +slide_limit_beta when the swing dominates the platform
// motion; otherwise the free-rolling alignment
// atan((omega*sweep_arm - vp*sin(phi)) / (vp*cos(phi))), clamped to the slip
// limit. vp*cos(phi) < kSpeedEpsilon routes to the saturated branch.
double deflection_inward(double phi, double omega, double vp, const RobotParams& params);

// Outward-stroke counterpart; saturates at -slide_limit_beta and returns
// -atan((omega*sweep_arm + vp*sin(phi)) / (vp*cos(phi))) otherwise.
double deflection_outward(double phi, double omega, double vp, const RobotParams& params);

// Free-caster alignment when the legs hold still: the wheel trails the
// platform velocity, which zeroes the thrust term.
inline double coast_deflection(double phi) { return -phi; }

// Per-leg normal force from the moment balance. Weight terms scale with
// cos(slope) on an incline. Throws SingularConfigError when the geometric
// denominator is not positive.
double normal_force(double phi, double beta, const RobotParams& params,
                    const TerrainParams& terrain);

// Friction component orthogonal to the wheel rolling plane:
// N * tan(tilt_axis_angle) * sin(beta). Odd in beta.
double anti_bias_force(double normal, double beta, const RobotParams& params);

// Heading-direction propulsion from both legs:
// 2 * N * tan(tilt_axis_angle) * sin(beta) * sin(phi + beta).
double forward_thrust(double normal, double phi, double beta, const RobotParams& params);

// Rolling + air resistance, plus the front-wheel brake term when engaged.
// vp is the forward speed magnitude.
double resistance(double normal, double phi, double beta, double vp,
                  const RobotParams& params, const TerrainParams& terrain);

// Raw force balance (F_thrust - resistance - W*sin(slope)) * g / W with no
// stiction handling. Used for the closed-form identity.
double acceleration_unclamped(double phi, double beta, double vp,
                              const RobotParams& params, const TerrainParams& terrain);

// Acceleration for a signed velocity v along the heading axis:
//  - moving forward: raw force balance,
//  - moving backward: resistance flips to oppose the backward motion,
//  - |v| <= kSpeedEpsilon: holds still unless |thrust - W*sin(slope)|
//    exceeds the rest resistance (drag cannot move a stationary body).
double acceleration_pipeline(double phi, double beta, double v,
                             const RobotParams& params, const TerrainParams& terrain);

// Single-expression acceleration on flat ground, algebraically equal to the
// unclamped pipeline with zero slope.
double acceleration_closed_form(double phi, double beta, double vp,
                                const RobotParams& params);

// Reversed mounting flips the deflection sign.
inline double apply_wheel_mode(double beta, WheelMode mode) {
  return mode == WheelMode::Reversed ? -beta : beta;
}

}  // namespace swingsim

#endif

#include "swingsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace swingsim {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

}  // namespace

void RobotParams::validate() const {
  require(platform_weight > 0.0, "robot.platform_weight must be positive");
  require(leg_weight > 0.0, "robot.leg_weight must be positive");
  require(head_link_length > 0.0, "robot.head_link_length must be positive");
  require(leg_length > 0.0, "robot.leg_length must be positive");
  require(front_to_com > 0.0, "robot.front_to_com must be positive");
  require(com_height > 0.0, "robot.com_height must be positive");
  require(sweep_arm > 0.0, "robot.sweep_arm must be positive");
  require(tilt_axis_angle > 0.0 && tilt_axis_angle < std::numbers::pi / 2.0,
          "robot.tilt_axis_angle must lie in (0, pi/2)");
  require(mu_roll >= 0.0, "robot.mu_roll must be nonnegative");
  require(mu_slide > mu_roll, "robot.mu_slide must exceed robot.mu_roll");
  require(std::tan(tilt_axis_angle) >= mu_slide,
          "robot.tilt_axis_angle too shallow: tan(tilt_axis_angle) must be >= mu_slide");
  require(air_drag >= 0.0, "robot.air_drag must be nonnegative");
  require(gravity > 0.0, "robot.gravity must be positive");
}

void TerrainParams::validate() const {
  require(std::abs(slope) < std::numbers::pi / 4.0,
          "terrain.slope must lie in (-pi/4, pi/4)");
  require(mu_brake >= 0.0, "terrain.mu_brake must be nonnegative");
}

double slide_limit_beta(const RobotParams& params) {
  if (params.mu_slide == 0.0) return 0.0;
  const double tan_tilt = std::tan(params.tilt_axis_angle);
  if (tan_tilt < params.mu_slide) {
    throw DomainError("slide limit undefined: tan(tilt_axis_angle) < mu_slide");
  }
  return std::asin(params.mu_slide / tan_tilt);
}

double deflection_inward(double phi, double omega, double vp, const RobotParams& params) {
  if (phi <= 0.0 || phi >= std::numbers::pi / 2.0) {
    throw DomainError("deflection: phi must lie in (0, pi/2)");
  }
  const double cap = slide_limit_beta(params);
  const double along_leg = vp * std::cos(phi);
  if (along_leg < kSpeedEpsilon) return cap;
  const double raw =
      std::atan((omega * params.sweep_arm - vp * std::sin(phi)) / along_leg);
  return std::clamp(raw, -cap, cap);
}

double deflection_outward(double phi, double omega, double vp, const RobotParams& params) {
  if (phi <= 0.0 || phi >= std::numbers::pi / 2.0) {
    throw DomainError("deflection: phi must lie in (0, pi/2)");
  }
  const double cap = slide_limit_beta(params);
  const double along_leg = vp * std::cos(phi);
  if (along_leg < kSpeedEpsilon) return -cap;
  const double raw =
      std::atan((omega * params.sweep_arm + vp * std::sin(phi)) / along_leg);
  return -std::clamp(raw, -cap, cap);
}

double normal_force(double phi, double beta, const RobotParams& params,
                    const TerrainParams& terrain) {
  const double cos_slope = std::cos(terrain.slope);
  const double link_term =
      2.0 * params.leg_weight * params.head_link_length * std::cos(params.head_link_angle);
  const double leg_term = 2.0 * params.leg_weight * params.leg_length * std::cos(phi);
  const double numerator =
      (params.platform_weight * params.front_to_com + link_term + leg_term) * cos_slope;
  const double denominator =
      2.0 * params.head_link_length * std::cos(params.head_link_angle) +
      2.0 * params.leg_length * std::cos(phi) -
      2.0 * std::tan(params.tilt_axis_angle) * std::sin(beta) * std::sin(phi + beta) *
          params.com_height;
  if (denominator <= 0.0) {
    std::ostringstream oss;
    oss << "singular leg configuration: load-balance denominator " << denominator
        << " at phi=" << phi << ", beta=" << beta;
    throw SingularConfigError(oss.str());
  }
  return numerator / denominator;
}

double anti_bias_force(double normal, double beta, const RobotParams& params) {
  return normal * std::tan(params.tilt_axis_angle) * std::sin(beta);
}

double forward_thrust(double normal, double phi, double beta, const RobotParams& params) {
  return 2.0 * anti_bias_force(normal, beta, params) * std::sin(phi + beta);
}

double resistance(double normal, double phi, double beta, double vp,
                  const RobotParams& params, const TerrainParams& terrain) {
  const double front_load =
      params.total_weight() * std::cos(terrain.slope) - 2.0 * normal;
  double drag = front_load * params.mu_roll +
                2.0 * normal * params.mu_roll * std::cos(phi + beta) +
                params.air_drag * vp;
  if (terrain.brake_engaged) drag += terrain.mu_brake * front_load;
  return drag;
}

double acceleration_unclamped(double phi, double beta, double vp,
                              const RobotParams& params, const TerrainParams& terrain) {
  const double normal = normal_force(phi, beta, params, terrain);
  const double thrust = forward_thrust(normal, phi, beta, params);
  const double drag = resistance(normal, phi, beta, vp, params, terrain);
  const double weight = params.total_weight();
  return (thrust - drag - weight * std::sin(terrain.slope)) * params.gravity / weight;
}

double acceleration_pipeline(double phi, double beta, double v,
                             const RobotParams& params, const TerrainParams& terrain) {
  if (v > kSpeedEpsilon) return acceleration_unclamped(phi, beta, v, params, terrain);

  const double normal = normal_force(phi, beta, params, terrain);
  const double thrust = forward_thrust(normal, phi, beta, params);
  const double weight = params.total_weight();
  if (v < -kSpeedEpsilon) {
    // Backward travel: rolling and air drag oppose the motion.
    const double drag = resistance(normal, phi, beta, -v, params, terrain);
    return (thrust + drag - weight * std::sin(terrain.slope)) * params.gravity / weight;
  }
  const double drive = thrust - weight * std::sin(terrain.slope);
  const double hold = resistance(normal, phi, beta, 0.0, params, terrain);
  if (std::abs(drive) <= hold) return 0.0;
  return (drive - std::copysign(hold, drive)) * params.gravity / weight;
}

double acceleration_closed_form(double phi, double beta, double vp,
                                const RobotParams& params) {
  const double tan_tilt = std::tan(params.tilt_axis_angle);
  const double sin_beta = std::sin(beta);
  const double sin_sum = std::sin(phi + beta);
  const double cos_sum = std::cos(phi + beta);
  const double weight = params.total_weight();
  const double numerator =
      params.platform_weight * params.front_to_com +
      2.0 * params.leg_weight * params.head_link_length * std::cos(params.head_link_angle) +
      2.0 * params.leg_weight * params.leg_length * std::cos(phi);
  const double denominator =
      2.0 * params.head_link_length * std::cos(params.head_link_angle) +
      2.0 * params.leg_length * std::cos(phi) -
      2.0 * tan_tilt * sin_beta * sin_sum * params.com_height;
  if (denominator <= 0.0) {
    std::ostringstream oss;
    oss << "singular leg configuration: load-balance denominator " << denominator
        << " at phi=" << phi << ", beta=" << beta;
    throw SingularConfigError(oss.str());
  }
  const double force_ratio =
      numerator *
      (2.0 * params.mu_roll - 2.0 * cos_sum * params.mu_roll + 2.0 * tan_tilt * sin_beta * sin_sum) /
      (denominator * weight);
  return (force_ratio - params.air_drag * vp / weight - params.mu_roll) * params.gravity;
}

}  // namespace swingsim

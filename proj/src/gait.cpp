#include "swingsim/gait.hpp"

namespace swingsim {

void GaitConfig::validate() const {
  const double lo = std::numbers::pi / 36.0;
  const double hi = std::numbers::pi / 3.0;
  if (!(phi_min > lo)) {
    throw DomainError("gait.phi_min must exceed pi/36 (0.0873 rad): the platform is "
                      "unbalanced below that swing angle");
  }
  if (!(phi_max < hi)) {
    throw DomainError("gait.phi_max must stay below pi/3 (1.0472 rad)");
  }
  if (!(phi_min < phi_max)) {
    throw DomainError("gait.phi_min must be smaller than gait.phi_max");
  }
  if (!(omega_in > 0.0)) throw DomainError("gait.omega_in must be positive");
  if (!(omega_out > 0.0)) throw DomainError("gait.omega_out must be positive");
  if (!(pause_s >= 0.0)) throw DomainError("gait.pause_s must be nonnegative");
}

LegState initial_leg_state(const GaitConfig& config) {
  return LegState{SwingPhase::Inward, config.phi_max, 0.0};
}

LegState advance(const LegState& state, const GaitConfig& config, double dt) {
  if (!(dt > 0.0)) throw DomainError("gait.advance: dt must be positive");

  LegState next = state;
  next.time_in_phase += dt;
  switch (state.phase) {
    case SwingPhase::Inward:
      next.phi = state.phi - config.omega_in * dt;
      if (next.phi <= config.phi_min) {
        next.phi = config.phi_min;
        const bool pause = config.pause_placement == PausePlacement::BeforeBoth &&
                           config.pause_s > 0.0;
        next.phase = pause ? SwingPhase::Pause : SwingPhase::Outward;
        next.time_in_phase = 0.0;
      }
      break;
    case SwingPhase::Outward:
      next.phi = state.phi + config.omega_out * dt;
      if (next.phi >= config.phi_max) {
        next.phi = config.phi_max;
        next.phase = config.pause_s > 0.0 ? SwingPhase::Pause : SwingPhase::Inward;
        next.time_in_phase = 0.0;
      }
      break;
    case SwingPhase::Pause:
      if (next.time_in_phase >= config.pause_s) {
        // Resume from whichever turnaround point the legs rested at.
        const bool at_max = (config.phi_max - state.phi) <= (state.phi - config.phi_min);
        next.phase = at_max ? SwingPhase::Inward : SwingPhase::Outward;
        next.time_in_phase = 0.0;
      }
      break;
  }
  return next;
}

double cycle_period(const GaitConfig& config) {
  const double pauses =
      config.pause_placement == PausePlacement::BeforeBoth ? 2.0 : 1.0;
  return config.amplitude() / config.omega_in + config.amplitude() / config.omega_out +
         pauses * config.pause_s;
}

double current_omega(const LegState& state, const GaitConfig& config) {
  switch (state.phase) {
    case SwingPhase::Inward:
      return -config.omega_in;
    case SwingPhase::Outward:
      return config.omega_out;
    case SwingPhase::Pause:
      break;
  }
  return 0.0;
}

}  // namespace swingsim

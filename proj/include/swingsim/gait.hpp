#ifndef SWINGSIM_GAIT_HPP
#define SWINGSIM_GAIT_HPP

#include <numbers>

#include "swingsim/errors.hpp"

namespace swingsim {

enum class SwingPhase { Inward, Outward, Pause };

// Where the dwell is inserted. BeforeInward mirrors the glide before a
// breaststroke kick (one pause per cycle); BeforeBoth pauses at both
// turnaround points.
enum class PausePlacement { BeforeInward, BeforeBoth };

struct GaitConfig {
  double phi_min = 3.0 * std::numbers::pi / 20.0;
  double phi_max = 11.0 * std::numbers::pi / 40.0;
  double omega_in = 1.17;   // inward stroke rate [rad/s]
  double omega_out = 0.975; // outward stroke rate [rad/s]
  double pause_s = 0.15;
  PausePlacement pause_placement = PausePlacement::BeforeInward;

  double amplitude() const { return phi_max - phi_min; }
  void validate() const;  // throws DomainError naming the field
};

// Both legs mirror one another, so a single state describes the pair.
struct LegState {
  SwingPhase phase = SwingPhase::Inward;
  double phi = 11.0 * std::numbers::pi / 40.0;
  double time_in_phase = 0.0;
};

// Starts at the top of the inward kick.
LegState initial_leg_state(const GaitConfig& config);

// Integrates phi at the phase rate and handles transitions. phi is clamped
// exactly to the stroke boundary at a transition; the boundary error is at
// most one step. dt must be positive and below any phase duration.
LegState advance(const LegState& state, const GaitConfig& config, double dt);

// Closed form of one full cycle: amplitude/omega_in + amplitude/omega_out
// plus one or two pauses.
double cycle_period(const GaitConfig& config);

// Signed stroke rate: -omega_in inward, +omega_out outward, 0 paused.
double current_omega(const LegState& state, const GaitConfig& config);

}  // namespace swingsim

#endif

#ifndef SWINGSIM_SIMULATOR_HPP
#define SWINGSIM_SIMULATOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "swingsim/control.hpp"
#include "swingsim/dynamics.hpp"
#include "swingsim/gait.hpp"

namespace swingsim {

// One plateau of a velocity-control target schedule.
struct TargetStep {
  double start_s = 0.0;
  double target_v = 0.5;
};

struct ControllerConfig {
  FuzzyConfig fuzzy = FuzzyConfig::defaults();
  MotorModel motor;
  SteeringConfig steering;
  double sample_time_s = 0.01;     // control period
  double measure_window_s = 0.1;   // trailing speed-average window

  void validate() const;
};

struct Scenario {
  RobotParams robot;
  TerrainParams terrain;
  GaitConfig gait;
  WheelMode mode = WheelMode::Forward;
  double duration_s = 10.0;
  double dt_s = 1e-3;
  int record_stride = 10;
  double initial_velocity = 0.0;

  // Legs held at a fixed angle (stroke rate zero); used by descent runs.
  std::optional<double> frozen_phi;

  // Closed-loop velocity control of the inward stroke rate when set.
  std::optional<ControllerConfig> controller;
  std::vector<TargetStep> targets;

  // Line-sensor trajectory following (requires a controller).
  std::optional<PathDef> path;

  void validate() const;
};

struct TraceRow {
  double t = 0.0;
  double phi = 0.0;
  SwingPhase phase = SwingPhase::Inward;
  double beta = 0.0;
  double normal = 0.0;
  double thrust = 0.0;
  double drag = 0.0;
  double accel = 0.0;
  double vp = 0.0;
  double x = 0.0;
  double heading = 0.0;
  double cmd_omega_in = 0.0;
  // Present when the scenario follows a path.
  double pos_x = 0.0;
  double pos_y = 0.0;
  double gamma = 0.0;
};

struct Trace {
  std::vector<TraceRow> rows;
  bool has_pose = false;

  // CSV with 9-significant-digit floats, '\n' newlines and the fixed header
  //   t,phi,phase,beta,N,F_fwd,f,a,Vp,x,heading,cmd_omega_in
  // plus ,pos_x,pos_y,gamma when has_pose.
  std::string to_csv() const;
  void write_csv(const std::string& path) const;
};

struct SimState {
  double t = 0.0;
  double vp = 0.0;       // signed velocity along the heading axis [m/s]
  double x = 0.0;        // displacement along the heading axis [m]
  double heading = 0.0;  // [rad]
  LegState leg;
  double last_beta = 0.0;
};

// A run that failed mid-flight; carries the rows recorded so far.
class SimulationError : public Error {
 public:
  SimulationError(const std::string& message, Trace partial, SimState state)
      : Error(message), partial_trace(std::move(partial)), failed_state(state) {}
  Trace partial_trace;
  SimState failed_state;
};

// One uncontrolled integration step: deflection from the current phase,
// wheel-mode application, acceleration, semi-implicit Euler, gait advance.
SimState step(const SimState& state, const Scenario& scenario);

// Full deterministic run; applies the controller/follower when configured.
Trace run(const Scenario& scenario);

// Mean velocity over the last two full gait cycles. The trace must span at
// least six cycles of the given gait.
double steady_velocity(const Trace& trace, const GaitConfig& gait);

// Mean velocity over rows with t in [k*T, (k+1)*T), T = cycle_period(gait).
double cycle_mean_velocity(const Trace& trace, const GaitConfig& gait, int cycle_index);

struct SweepPoint {
  double value = 0.0;
  double steady = 0.0;
  bool ok = false;
  std::string error;
};

enum class SweepAxis { OmegaIn, OmegaOut };

// Independent runs per value, results in input order; failures mark the row
// and the sweep continues. threads <= 0 picks the hardware concurrency.
std::vector<SweepPoint> sweep(const Scenario& base, SweepAxis axis,
                              const std::vector<double>& values, int threads = 0);

// Steady climb velocity per uphill slope angle. Runs whose mean velocity
// collapses to (or through) zero report 0: the platform failed to climb.
std::vector<SweepPoint> slope_climb(const Scenario& base,
                                    const std::vector<double>& alphas_rad,
                                    int threads = 0);

// Downslope coast with the legs frozen at phi = pi/5. Without the brake the
// platform accelerates over the whole slope length; with it a bang-bang
// controller holds the speed near target_v.
Trace braked_descent(const Scenario& base, double slope_length_m, double target_v,
                     bool use_brake);

}  // namespace swingsim

#endif

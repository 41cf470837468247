#include "swingsim/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <thread>

namespace swingsim {

namespace {

const char* phase_name(SwingPhase phase) {
  switch (phase) {
    case SwingPhase::Inward:
      return "Inward";
    case SwingPhase::Outward:
      return "Outward";
    case SwingPhase::Pause:
      return "Pause";
  }
  return "?";
}

void append_field(std::string& out, double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  out += buf;
}

// Everything a single integration step produces, in the propulsion frame
// (the frame in which the platform drives "forward" regardless of wheel
// mounting).
struct StepForces {
  double beta = 0.0;
  double normal = 0.0;
  double thrust = 0.0;
  double drag = 0.0;
  double accel = 0.0;
};

// Per-step inputs that outer loops (controller, brake logic) may override.
struct StepInputs {
  double omega_in = 0.0;
  bool brake = false;
  double yaw_rate = 0.0;
};

// Advances frame velocity/displacement and the gait by one dt.
StepForces integrate_step(double& velocity, double& displacement, LegState& leg,
                          const Scenario& scenario, const StepInputs& in) {
  const GaitConfig& gait = scenario.gait;
  double phi;
  SwingPhase phase;
  if (scenario.frozen_phi) {
    phi = *scenario.frozen_phi;
    phase = SwingPhase::Pause;
  } else {
    phi = leg.phi;
    phase = leg.phase;
  }

  StepForces f;
  switch (phase) {
    case SwingPhase::Inward:
      f.beta = deflection_inward(phi, in.omega_in, velocity, scenario.robot);
      break;
    case SwingPhase::Outward:
      f.beta = deflection_outward(phi, gait.omega_out, velocity, scenario.robot);
      break;
    case SwingPhase::Pause:
      f.beta = coast_deflection(phi);
      break;
  }

  TerrainParams terrain = scenario.terrain;
  terrain.brake_engaged = terrain.brake_engaged || in.brake;

  f.normal = normal_force(phi, f.beta, scenario.robot, terrain);
  f.thrust = forward_thrust(f.normal, phi, f.beta, scenario.robot);
  f.drag = resistance(f.normal, phi, f.beta, std::abs(velocity), scenario.robot, terrain);
  f.accel = acceleration_pipeline(phi, f.beta, velocity, scenario.robot, terrain);

  velocity += f.accel * scenario.dt_s;
  displacement += velocity * scenario.dt_s;
  if (!scenario.frozen_phi) {
    GaitConfig active = gait;
    active.omega_in = in.omega_in;
    leg = advance(leg, active, scenario.dt_s);
  }
  return f;
}

double target_at(const std::vector<TargetStep>& targets, double t) {
  double value = targets.empty() ? 0.0 : targets.front().target_v;
  for (const auto& step : targets) {
    if (t >= step.start_s) value = step.target_v;
  }
  return value;
}

}  // namespace

void ControllerConfig::validate() const {
  fuzzy.validate();
  motor.validate();
  steering.validate();
  if (!(sample_time_s > 0.0)) throw ConfigError("controller.sample_time_s must be positive");
  if (!(measure_window_s > 0.0)) throw ConfigError("controller.measure_window_s must be positive");
}

void Scenario::validate() const {
  robot.validate();
  terrain.validate();
  gait.validate();
  if (!(duration_s > 0.0)) throw ConfigError("sim.duration_s must be positive");
  if (!(dt_s >= 1e-5 && dt_s <= 1e-2)) {
    throw ConfigError("sim.dt_s must lie in [1e-5, 1e-2]");
  }
  if (record_stride < 1) throw ConfigError("sim.record_stride must be at least 1");
  if (frozen_phi && !(*frozen_phi > 0.0 && *frozen_phi < std::numbers::pi / 2.0)) {
    throw ConfigError("frozen phi must lie in (0, pi/2)");
  }
  if (controller) controller->validate();
  if (path) {
    path->validate();
    if (!controller) throw ConfigError("path following requires a controller");
  }
}

std::string Trace::to_csv() const {
  std::string out = "t,phi,phase,beta,N,F_fwd,f,a,Vp,x,heading,cmd_omega_in";
  if (has_pose) out += ",pos_x,pos_y,gamma";
  out += '\n';
  for (const auto& r : rows) {
    append_field(out, r.t);
    out += ',';
    append_field(out, r.phi);
    out += ',';
    out += phase_name(r.phase);
    out += ',';
    append_field(out, r.beta);
    out += ',';
    append_field(out, r.normal);
    out += ',';
    append_field(out, r.thrust);
    out += ',';
    append_field(out, r.drag);
    out += ',';
    append_field(out, r.accel);
    out += ',';
    append_field(out, r.vp);
    out += ',';
    append_field(out, r.x);
    out += ',';
    append_field(out, r.heading);
    out += ',';
    append_field(out, r.cmd_omega_in);
    if (has_pose) {
      out += ',';
      append_field(out, r.pos_x);
      out += ',';
      append_field(out, r.pos_y);
      out += ',';
      append_field(out, r.gamma);
    }
    out += '\n';
  }
  return out;
}

void Trace::write_csv(const std::string& path) const {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open trace output file: " + path);
  file << to_csv();
}

SimState step(const SimState& state, const Scenario& scenario) {
  const double sign = scenario.mode == WheelMode::Reversed ? -1.0 : 1.0;
  double velocity = sign * state.vp;
  double displacement = sign * state.x;
  LegState leg = state.leg;

  StepInputs in;
  in.omega_in = scenario.gait.omega_in;
  const StepForces f = integrate_step(velocity, displacement, leg, scenario, in);

  SimState next = state;
  next.t = state.t + scenario.dt_s;
  next.vp = sign * velocity;
  next.x = sign * displacement;
  next.leg = leg;
  next.last_beta = apply_wheel_mode(f.beta, scenario.mode);
  return next;
}

Trace run(const Scenario& scenario) {
  scenario.validate();

  const double sign = scenario.mode == WheelMode::Reversed ? -1.0 : 1.0;
  const bool controlled = scenario.controller.has_value();
  const bool following = scenario.path.has_value();

  double velocity = sign * scenario.initial_velocity;
  double displacement = 0.0;
  double t = 0.0;
  LegState leg = initial_leg_state(scenario.gait);

  Pose pose;
  double heading = 0.0;
  if (following) {
    pose = path_start(*scenario.path);
    heading = pose.heading;
  }

  PidState pid;
  FollowerState follower;
  double command = scenario.gait.omega_in;
  double motor_actual = scenario.gait.omega_in;
  double gamma = 0.0;
  std::size_t ctl_every = 1;
  std::size_t window_len = 1;
  std::deque<double> window;
  if (controlled) {
    const ControllerConfig& ctl = *scenario.controller;
    ctl_every = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(ctl.sample_time_s / scenario.dt_s)));
    window_len = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(ctl.measure_window_s / scenario.dt_s)));
    command = ctl.fuzzy.base_gains.output_min;
    motor_actual = command;
  }

  Trace trace;
  trace.has_pose = following;
  const auto n_steps = static_cast<std::size_t>(std::llround(scenario.duration_s / scenario.dt_s));
  trace.rows.reserve(n_steps / static_cast<std::size_t>(scenario.record_stride) + 1);

  auto make_state = [&](double beta_frame) {
    SimState st;
    st.t = t;
    st.vp = sign * velocity;
    st.x = sign * displacement;
    st.heading = heading;
    st.leg = leg;
    st.last_beta = apply_wheel_mode(beta_frame, scenario.mode);
    return st;
  };

  for (std::size_t i = 0; i < n_steps; ++i) {
    if (controlled) {
      window.push_back(velocity);
      if (window.size() > window_len) window.pop_front();
      if (i % ctl_every == 0) {
        const ControllerConfig& ctl = *scenario.controller;
        double measured = 0.0;
        for (const double v : window) measured += v;
        measured /= static_cast<double>(window.size());
        const double target = target_at(scenario.targets, t);
        command = velocity_controller_step(target, measured, ctl.sample_time_s, pid,
                                           ctl.fuzzy);
        if (following) {
          pose.heading = heading;
          try {
            gamma = follow_step(pose, *scenario.path, ctl.steering, follower,
                                ctl.sample_time_s);
          } catch (const PathLostError& e) {
            throw SimulationError(e.what(), std::move(trace), make_state(0.0));
          }
        }
      }
      motor_actual = motor_track(command, motor_actual, scenario.dt_s,
                                 scenario.controller->motor);
      motor_actual = std::clamp(motor_actual, 0.05, 10.0);
    }

    StepInputs in;
    in.omega_in = controlled ? motor_actual : scenario.gait.omega_in;
    StepForces f;
    try {
      f = integrate_step(velocity, displacement, leg, scenario, in);
    } catch (const SingularConfigError& e) {
      throw SimulationError(e.what(), std::move(trace), make_state(0.0));
    }

    if (following) {
      const double yaw_rate =
          rudder_yaw_rate(gamma, sign * velocity, scenario.controller->steering);
      heading += yaw_rate * scenario.dt_s;
      pose.x += sign * velocity * std::cos(heading) * scenario.dt_s;
      pose.y += sign * velocity * std::sin(heading) * scenario.dt_s;
    }
    t += scenario.dt_s;

    if ((i + 1) % static_cast<std::size_t>(scenario.record_stride) == 0) {
      TraceRow row;
      row.t = t;
      row.phi = scenario.frozen_phi ? *scenario.frozen_phi : leg.phi;
      row.phase = scenario.frozen_phi ? SwingPhase::Pause : leg.phase;
      row.beta = apply_wheel_mode(f.beta, scenario.mode);
      row.normal = f.normal;
      row.thrust = sign * f.thrust;
      row.drag = f.drag;
      row.accel = sign * f.accel;
      row.vp = sign * velocity;
      row.x = sign * displacement;
      row.heading = heading;
      row.cmd_omega_in = controlled ? command : scenario.gait.omega_in;
      if (following) {
        row.pos_x = pose.x;
        row.pos_y = pose.y;
        row.gamma = gamma;
      }
      trace.rows.push_back(row);
    }
  }
  return trace;
}

double steady_velocity(const Trace& trace, const GaitConfig& gait) {
  if (trace.rows.empty()) throw InsufficientDataError("empty trace");
  const double period = cycle_period(gait);
  const double span = trace.rows.back().t - trace.rows.front().t;
  if (span < 6.0 * period) {
    throw InsufficientDataError("steady velocity needs at least six gait cycles of data");
  }
  const double cutoff = trace.rows.back().t - 2.0 * period;
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& row : trace.rows) {
    if (row.t >= cutoff) {
      sum += row.vp;
      ++count;
    }
  }
  if (count == 0) throw InsufficientDataError("no rows in the steady window");
  return sum / static_cast<double>(count);
}

double cycle_mean_velocity(const Trace& trace, const GaitConfig& gait, int cycle_index) {
  if (cycle_index < 0) throw DomainError("cycle index must be nonnegative");
  const double period = cycle_period(gait);
  const double lo = period * cycle_index;
  const double hi = period * (cycle_index + 1);
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& row : trace.rows) {
    if (row.t >= lo && row.t < hi) {
      sum += row.vp;
      ++count;
    }
  }
  if (count == 0) {
    throw InsufficientDataError("trace does not cover the requested gait cycle");
  }
  return sum / static_cast<double>(count);
}

namespace {

std::vector<SweepPoint> run_points(const Scenario& base, const std::vector<double>& values,
                                   int threads,
                                   void (*apply)(Scenario&, double),
                                   double (*report)(double)) {
  std::vector<SweepPoint> points(values.size());
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  std::size_t n_threads = threads > 0 ? static_cast<std::size_t>(threads) : hw;
  n_threads = std::max<std::size_t>(1, std::min(n_threads, values.size()));

  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t idx = cursor.fetch_add(1);
      if (idx >= values.size()) break;
      SweepPoint& point = points[idx];
      point.value = values[idx];
      try {
        Scenario scenario = base;
        apply(scenario, values[idx]);
        const Trace trace = run(scenario);
        point.steady = report(steady_velocity(trace, scenario.gait));
        point.ok = true;
      } catch (const Error& e) {
        point.ok = false;
        point.error = e.what();
      }
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return points;
}

}  // namespace

std::vector<SweepPoint> sweep(const Scenario& base, SweepAxis axis,
                              const std::vector<double>& values, int threads) {
  if (axis == SweepAxis::OmegaIn) {
    return run_points(
        base, values, threads, [](Scenario& s, double v) { s.gait.omega_in = v; },
        [](double v) { return v; });
  }
  return run_points(
      base, values, threads, [](Scenario& s, double v) { s.gait.omega_out = v; },
      [](double v) { return v; });
}

std::vector<SweepPoint> slope_climb(const Scenario& base,
                                    const std::vector<double>& alphas_rad, int threads) {
  return run_points(
      base, alphas_rad, threads, [](Scenario& s, double a) { s.terrain.slope = a; },
      [](double v) { return std::max(0.0, v); });
}

Trace braked_descent(const Scenario& base, double slope_length_m, double target_v,
                     bool use_brake) {
  Scenario scenario = base;
  scenario.terrain.slope = -std::abs(scenario.terrain.slope);
  if (scenario.terrain.slope == 0.0) {
    throw ConfigError("descent needs a nonzero terrain slope");
  }
  if (!scenario.frozen_phi) scenario.frozen_phi = std::numbers::pi / 5.0;
  scenario.controller.reset();
  scenario.path.reset();
  scenario.validate();
  if (!(slope_length_m > 0.0)) throw ConfigError("descent slope length must be positive");

  Trace trace;
  double velocity = scenario.initial_velocity;
  double displacement = 0.0;
  double t = 0.0;
  LegState leg = initial_leg_state(scenario.gait);
  bool engaged = false;
  const double max_time = 600.0;
  std::size_t i = 0;
  while (displacement < slope_length_m && t < max_time) {
    if (use_brake && target_v > 0.0) {
      // Bang-bang with a small release band.
      if (velocity >= target_v) {
        engaged = true;
      } else if (velocity < 0.98 * target_v) {
        engaged = false;
      }
    }
    StepInputs in;
    in.omega_in = scenario.gait.omega_in;
    in.brake = engaged;
    StepForces f;
    try {
      f = integrate_step(velocity, displacement, leg, scenario, in);
    } catch (const SingularConfigError& e) {
      SimState st;
      st.t = t;
      st.vp = velocity;
      st.x = displacement;
      throw SimulationError(e.what(), std::move(trace), st);
    }
    t += scenario.dt_s;
    ++i;
    if (i % static_cast<std::size_t>(scenario.record_stride) == 0) {
      TraceRow row;
      row.t = t;
      row.phi = *scenario.frozen_phi;
      row.phase = SwingPhase::Pause;
      row.beta = f.beta;
      row.normal = f.normal;
      row.thrust = f.thrust;
      row.drag = f.drag;
      row.accel = f.accel;
      row.vp = velocity;
      row.x = displacement;
      row.cmd_omega_in = 0.0;  // legs are frozen, no stroke command
      trace.rows.push_back(row);
    }
  }
  return trace;
}

}  // namespace swingsim

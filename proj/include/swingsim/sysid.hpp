#ifndef SWINGSIM_SYSID_HPP
#define SWINGSIM_SYSID_HPP

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "swingsim/errors.hpp"

namespace swingsim {

// No-intercept quadratic speed map:
//   v = a_in*w_in + a_in_sq*w_in^2 + a_out*w_out + a_out_sq*w_out^2
struct SpeedModel {
  double a_in = 0.0;
  double a_in_sq = 0.0;
  double a_out = 0.0;
  double a_out_sq = 0.0;

  std::array<double, 4> coefficients() const { return {a_in, a_in_sq, a_out, a_out_sq}; }
};

struct SpeedSample {
  double omega_in = 0.0;
  double omega_out = 0.0;
  double speed = 0.0;
};

struct FitResult {
  SpeedModel model;
  std::array<double, 4> stderrs{};  // per-coefficient standard errors
  double rms = 0.0;                 // training-set residual RMS [m/s]
};

// Ordinary least squares through column-scaled normal equations. Requires at
// least four samples and a full-rank design; throws RankDeficientError
// otherwise (e.g. every sample shares the same stroke rates).
FitResult fit_speed_model(std::span<const SpeedSample> samples);

double evaluate(const SpeedModel& model, double omega_in, double omega_out);

struct ModelGap {
  double max_abs = 0.0;  // [m/s]
  double rms = 0.0;
};

struct GridSpec {
  double omega_in_lo = 0.78;
  double omega_in_hi = 2.34;
  double omega_out_lo = 0.78;
  double omega_out_hi = 1.755;
  int points_per_axis = 9;
};

// Velocity-space discrepancy between two models over a rate grid. Compared in
// velocity rather than coefficient space: the quadratic basis columns are
// nearly collinear over the narrow swept ranges.
ModelGap compare(const SpeedModel& a, const SpeedModel& b, const GridSpec& grid);

// Stroke-rate grid the fit subcommand samples by default.
std::vector<std::pair<double, double>> default_fit_grid();

// Built-in reference coefficients for the baseline platform: one set fitted
// from simulation sweeps, one from hardware runs.
SpeedModel reference_speed_model_sim();
SpeedModel reference_speed_model_exp();

}  // namespace swingsim

#endif

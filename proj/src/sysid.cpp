#include "swingsim/sysid.hpp"

#include <algorithm>
#include <cmath>

namespace swingsim {

namespace {

using Matrix4 = std::array<std::array<double, 4>, 4>;

std::array<double, 4> basis(double omega_in, double omega_out) {
  return {omega_in, omega_in * omega_in, omega_out, omega_out * omega_out};
}

// Gauss-Jordan inverse with partial pivoting; throws on a near-singular pivot.
Matrix4 invert(Matrix4 m) {
  Matrix4 inv{};
  for (std::size_t i = 0; i < 4; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < 4; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) < 1e-12) {
      throw RankDeficientError(
          "speed-model fit is rank deficient: samples do not span the "
          "stroke-rate basis");
    }
    std::swap(m[col], m[pivot]);
    std::swap(inv[col], inv[pivot]);
    const double scale = m[col][col];
    for (std::size_t c = 0; c < 4; ++c) {
      m[col][c] /= scale;
      inv[col][c] /= scale;
    }
    for (std::size_t r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double factor = m[r][col];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < 4; ++c) {
        m[r][c] -= factor * m[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace

FitResult fit_speed_model(std::span<const SpeedSample> samples) {
  if (samples.size() < 4) {
    throw InsufficientDataError("speed-model fit needs at least four samples");
  }

  // Column scaling keeps the normal equations well conditioned.
  std::array<double, 4> scale{};
  for (const auto& s : samples) {
    const auto row = basis(s.omega_in, s.omega_out);
    for (std::size_t c = 0; c < 4; ++c) scale[c] = std::max(scale[c], std::abs(row[c]));
  }
  for (auto& v : scale) {
    if (v == 0.0) v = 1.0;
  }

  Matrix4 xtx{};
  std::array<double, 4> xty{};
  for (const auto& s : samples) {
    auto row = basis(s.omega_in, s.omega_out);
    for (std::size_t c = 0; c < 4; ++c) row[c] /= scale[c];
    for (std::size_t r = 0; r < 4; ++r) {
      xty[r] += row[r] * s.speed;
      for (std::size_t c = 0; c < 4; ++c) xtx[r][c] += row[r] * row[c];
    }
  }

  const Matrix4 inv = invert(xtx);
  std::array<double, 4> scaled_coef{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) scaled_coef[r] += inv[r][c] * xty[c];
  }

  FitResult result;
  result.model.a_in = scaled_coef[0] / scale[0];
  result.model.a_in_sq = scaled_coef[1] / scale[1];
  result.model.a_out = scaled_coef[2] / scale[2];
  result.model.a_out_sq = scaled_coef[3] / scale[3];

  double rss = 0.0;
  for (const auto& s : samples) {
    const double r = s.speed - evaluate(result.model, s.omega_in, s.omega_out);
    rss += r * r;
  }
  result.rms = std::sqrt(rss / static_cast<double>(samples.size()));

  const double dof = static_cast<double>(samples.size()) - 4.0;
  const double variance = dof > 0.0 ? rss / dof : 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    result.stderrs[c] = std::sqrt(std::max(0.0, variance * inv[c][c])) / scale[c];
  }
  return result;
}

double evaluate(const SpeedModel& model, double omega_in, double omega_out) {
  return model.a_in * omega_in + model.a_in_sq * omega_in * omega_in +
         model.a_out * omega_out + model.a_out_sq * omega_out * omega_out;
}

ModelGap compare(const SpeedModel& a, const SpeedModel& b, const GridSpec& grid) {
  ModelGap gap;
  const int n = std::max(2, grid.points_per_axis);
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double win =
        grid.omega_in_lo + (grid.omega_in_hi - grid.omega_in_lo) * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double wout =
          grid.omega_out_lo + (grid.omega_out_hi - grid.omega_out_lo) * j / (n - 1);
      const double d = std::abs(evaluate(a, win, wout) - evaluate(b, win, wout));
      gap.max_abs = std::max(gap.max_abs, d);
      sum_sq += d * d;
    }
  }
  gap.rms = std::sqrt(sum_sq / (static_cast<double>(n) * n));
  return gap;
}

std::vector<std::pair<double, double>> default_fit_grid() {
  const std::array<double, 5> wins = {0.78, 1.17, 1.56, 1.95, 2.34};
  const std::array<double, 4> wouts = {0.78, 1.1, 1.4, 1.755};
  std::vector<std::pair<double, double>> grid;
  grid.reserve(wins.size() * wouts.size());
  for (const double wi : wins) {
    for (const double wo : wouts) grid.emplace_back(wi, wo);
  }
  return grid;
}

SpeedModel reference_speed_model_sim() { return {0.4017, -0.01561, 0.01339, 0.004193}; }

SpeedModel reference_speed_model_exp() { return {0.3645, -0.01908, 0.06387, -0.016930}; }

}  // namespace swingsim

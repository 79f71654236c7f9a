#include "polykin/grid.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "polykin/errors.hpp"

namespace polykin {

PhaseGrid::PhaseGrid(const GridConfig& config) : config_(config) {
  if (config.n_x < 2) throw InvalidConfig("n_x must be at least 2");
  if (config.n_v < 2) throw InvalidConfig("n_v must be at least 2");
  if (config.n_i < 1) throw InvalidConfig("n_i must be at least 1");
  if (!(config.v_max > 0.0) || !std::isfinite(config.v_max))
    throw InvalidConfig("v_max must be positive");
  if (!(config.i_max > 0.0) || !std::isfinite(config.i_max))
    throw InvalidConfig("i_max must be positive");
  if (!(config.delta > 0.0) || !std::isfinite(config.delta))
    throw InvalidConfig("delta must be positive");

  dx_ = 1.0 / static_cast<double>(config.n_x);
  dv_ = 2.0 * config.v_max / static_cast<double>(config.n_v - 1);
  di_ = config.i_max / static_cast<double>(config.n_i);
  n_v3_ = config.n_v * config.n_v * config.n_v;

  // Node-centered symmetric layout: v_a = (a - (n_v - 1)/2) dv.
  axis_.resize(config.n_v);
  for (std::size_t a = 0; a < config.n_v; ++a) {
    const double offset = static_cast<double>(2 * a) - static_cast<double>(config.n_v - 1);
    axis_[a] = 0.5 * offset * dv_;
  }

  velocity_.resize(3 * n_v3_);
  speed2_.resize(n_v3_);
  for (std::size_t a1 = 0; a1 < config.n_v; ++a1)
    for (std::size_t a2 = 0; a2 < config.n_v; ++a2)
      for (std::size_t a3 = 0; a3 < config.n_v; ++a3) {
        const std::size_t j = velocity_index(a1, a2, a3);
        velocity_[3 * j] = axis_[a1];
        velocity_[3 * j + 1] = axis_[a2];
        velocity_[3 * j + 2] = axis_[a3];
        speed2_[j] = axis_[a1] * axis_[a1] + axis_[a2] * axis_[a2] + axis_[a3] * axis_[a3];
      }

  energy_.resize(config.n_i);
  eps_.resize(config.n_i);
  const double p = 2.0 / config.delta;
  for (std::size_t k = 0; k < config.n_i; ++k) {
    energy_[k] = static_cast<double>(k) * di_;
    eps_[k] = std::pow(energy_[k], p);
  }
}

std::shared_ptr<const std::vector<double>> PhaseGrid::norm_weights(double q) const {
  std::lock_guard<std::mutex> lock(weights_mutex_);
  if (weights_ && weights_q_ == q) return weights_;
  auto w = std::make_shared<std::vector<double>>(cell_size());
  const double half_q = 0.5 * q;
  for (std::size_t j = 0; j < n_v3_; ++j)
    for (std::size_t k = 0; k < config_.n_i; ++k)
      (*w)[j * config_.n_i + k] = std::pow(1.0 + speed2_[j] + eps_[k], half_q);
  weights_ = std::move(w);
  weights_q_ = q;
  return weights_;
}

bool PhaseGrid::same_layout(const PhaseGrid& other) const {
  return config_.n_x == other.config_.n_x && config_.n_v == other.config_.n_v &&
         config_.n_i == other.config_.n_i && config_.v_max == other.config_.v_max &&
         config_.i_max == other.config_.i_max && config_.delta == other.config_.delta;
}

GridPtr build_grid(const GridConfig& config) { return std::make_shared<const PhaseGrid>(config); }

FootWeight foot(std::size_t i, double v1, double dt, const PhaseGrid& grid) {
  // Work in cell units: the foot sits at i - v1 dt / dx.
  const double n_x = static_cast<double>(grid.n_x());
  double shift = -v1 * dt * n_x;
  const double nearest = std::round(shift);
  if (std::abs(shift - nearest) <=
      8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(shift)))
    shift = nearest;
  const double lower = std::floor(shift);
  const double frac = shift - lower;

  const auto n = static_cast<long long>(grid.n_x());
  long long s = (static_cast<long long>(i) + static_cast<long long>(std::fmod(lower, n_x))) % n;
  if (s < 0) s += n;
  return {static_cast<std::size_t>(s), 1.0 - frac};
}

} // namespace polykin

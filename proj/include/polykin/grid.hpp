#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "polykin/types.hpp"

namespace polykin {

/// Sizes of the phase-space discretization. The internal-energy coordinate
/// carries its energy map eps(I) = I^{2/delta}, so delta lives here too.
struct GridConfig {
  std::size_t n_x = 16;  ///< Spatial cells on the periodic unit interval.
  std::size_t n_v = 17;  ///< Velocity nodes per axis.
  double v_max = 8.0;    ///< Velocity truncation radius.
  std::size_t n_i = 16;  ///< Internal-energy nodes.
  double i_max = 16.0;   ///< Internal-energy truncation, dI = i_max / n_i.
  double delta = 2.0;    ///< Internal degrees of freedom.
};

/// Uniform phase-space grid: x_i = i dx (periodic), a symmetric velocity cube
/// with spacing dv on every axis, and I_k = k dI for k = 0..n_i-1.
///
/// Storage order of distribution values is (i, j1, j2, j3, k) with the
/// energy index innermost.
class PhaseGrid {
public:
  explicit PhaseGrid(const GridConfig& config);

  const GridConfig& config() const { return config_; }
  std::size_t n_x() const { return config_.n_x; }
  std::size_t n_v() const { return config_.n_v; }
  std::size_t n_i() const { return config_.n_i; }
  double v_max() const { return config_.v_max; }
  double i_max() const { return config_.i_max; }
  double delta() const { return config_.delta; }
  double dx() const { return dx_; }
  double dv() const { return dv_; }
  double di() const { return di_; }

  std::size_t velocity_count() const { return n_v3_; }
  std::size_t cell_size() const { return n_v3_ * config_.n_i; }
  std::size_t size() const { return config_.n_x * cell_size(); }

  double x(std::size_t i) const { return static_cast<double>(i) * dx_; }
  /// Velocity node along one axis, a = 0..n_v-1.
  double axis_node(std::size_t a) const { return axis_[a]; }
  std::span<const double> axis_nodes() const { return axis_; }
  /// First-axis index of flat velocity index j.
  std::size_t axis1_of(std::size_t j) const { return j / (config_.n_v * config_.n_v); }
  Vec3 velocity(std::size_t j) const {
    return {velocity_[3 * j], velocity_[3 * j + 1], velocity_[3 * j + 2]};
  }
  double speed_squared(std::size_t j) const { return speed2_[j]; }
  std::size_t velocity_index(std::size_t a1, std::size_t a2, std::size_t a3) const {
    return (a1 * config_.n_v + a2) * config_.n_v + a3;
  }

  double energy(std::size_t k) const { return energy_[k]; }
  std::span<const double> energy_nodes() const { return energy_; }
  /// eps(I_k) = I_k^{2/delta}.
  double energy_map(std::size_t k) const { return eps_[k]; }
  std::span<const double> energy_map_nodes() const { return eps_; }

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * n_v3_ + j) * config_.n_i + k;
  }

  /// Quadrature weight of one (j, k) node: dv^3 dI.
  double phase_weight() const { return dv_ * dv_ * dv_ * di_; }
  /// Quadrature weight of one (i, j, k) node: dx dv^3 dI.
  double node_weight() const { return dx_ * phase_weight(); }

  /// (1 + |v_j|^2 + eps(I_k))^{q/2} for one cell's (j, k) block. Cached per q.
  std::shared_ptr<const std::vector<double>> norm_weights(double q) const;

  /// Same extents, spacings and energy map.
  bool same_layout(const PhaseGrid& other) const;

private:
  GridConfig config_;
  double dx_ = 0.0;
  double dv_ = 0.0;
  double di_ = 0.0;
  std::size_t n_v3_ = 0;
  std::vector<double> axis_;
  std::vector<double> velocity_;
  std::vector<double> speed2_;
  std::vector<double> energy_;
  std::vector<double> eps_;

  mutable std::mutex weights_mutex_;
  mutable double weights_q_ = -1.0;
  mutable std::shared_ptr<const std::vector<double>> weights_;
};

using GridPtr = std::shared_ptr<const PhaseGrid>;

/// Validates the configuration (InvalidConfig on nonpositive sizes).
GridPtr build_grid(const GridConfig& config);

/// Foot of the backward characteristic through node i.
struct FootWeight {
  std::size_t s = 0; ///< Lower interpolation cell, wrapped into [0, n_x).
  double a = 1.0;    ///< Weight of cell s; cell s+1 gets 1 - a. 0 < a <= 1.
};

/// Locates x_i - v1 dt (mod 1) in [x_s, x_{s+1}) and returns s with
/// a = (x_{s+1} - y) / dx. Feet within rounding of a node land on it.
FootWeight foot(std::size_t i, double v1, double dt, const PhaseGrid& grid);

} // namespace polykin

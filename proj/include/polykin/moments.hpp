#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polykin/field.hpp"
#include "polykin/params.hpp"
#include "polykin/types.hpp"

namespace polykin {

/// Discrete macroscopic state of one spatial cell.
struct MacroCell {
  double rho = 0.0;
  Vec3 u = Vec3::Zero();
  Mat3 theta_tensor = Mat3::Zero(); ///< Stress tensor (1/rho) sum f (v-u)(v-u)^T.
  double t_tr = 0.0;                ///< Translational temperature.
  double t_int = 0.0;               ///< Internal temperature T_{I,delta}.
  double t_delta = 0.0;             ///< (3 t_tr + delta t_int) / (3 + delta).
  double t_theta = 0.0;             ///< theta t_delta + (1 - theta) t_int.
  Mat3 t_blend = Mat3::Zero();      ///< Temperature tensor of the Gaussian.
};

struct MacroFields {
  std::vector<MacroCell> cells;

  std::size_t size() const { return cells.size(); }
  const MacroCell& operator[](std::size_t i) const { return cells[i]; }
  MacroCell& operator[](std::size_t i) { return cells[i]; }
};

/// Mass below this is treated as a vacuum cell.
inline constexpr double kZeroDensityThreshold = 1e-300;

/// lambda theta T_delta Id + lambda (1-theta)(1-nu) T_tr Id + (1-theta) nu_bar Theta.
Mat3 blended_tensor(double t_delta, double t_tr, const Mat3& theta_tensor,
                    const SchemeParams& params, const BlendFactors& blend);

/// Moments of one (j, k) block. `cell_index` only labels errors.
MacroCell cell_moments(std::span<const double> block, const PhaseGrid& grid,
                       const SchemeParams& params, const BlendFactors& blend,
                       std::size_t cell_index = 0);

/// Moments of every spatial cell. The blend factors use this dt; dt = 0
/// gives the continuous-model temperature tensor.
MacroFields compute_moments(const DistField& field, const SchemeParams& params, double dt);

struct SandwichReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// min over directions of (k^T T k - lower) / upper.
  double worst_lower_margin = 0.0;
  /// min over directions of (upper - k^T T k) / upper.
  double worst_upper_margin = 0.0;
  Vec3 worst_direction = Vec3::Zero();
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  /// theta T_delta <= T_theta <= (delta + 3(1-theta))/delta T_delta.
  bool relaxation_temperature_ok = true;

  bool ok() const { return violations == 0 && relaxation_temperature_ok; }
  /// Throws BoundViolated with the offending direction and margin.
  void require() const;
};

/// Probes lambda theta T_delta <= k^T T k <= (1/3) lambda C_nu (3 + delta(1-theta)) T_delta
/// along `trials` random unit directions, with C_nu = max(1 - nu, 1 + 2 nu).
SandwichReport tensor_sandwich_check(const MacroCell& cell, const SchemeParams& params, double dt,
                                     std::size_t trials, std::uint64_t seed = 0x5eed,
                                     double relative_slack = 1e-12);

} // namespace polykin

#pragma once

#include <span>
#include <vector>

#include "polykin/grid.hpp"
#include "polykin/moments.hpp"
#include "polykin/types.hpp"

namespace polykin {

/// Cholesky factor of a symmetric positive definite 3x3 tensor.
struct SpdFactor {
  Mat3 lower = Mat3::Identity(); ///< L with T = L L^T, positive diagonal.
  double log_det = 0.0;          ///< log det T = 2 sum log L_aa.
};

/// Throws NonSpdTensor when the tensor is not positive definite. Inside the
/// scheme this means the discrete moments left the regime where the
/// temperature tensor is guaranteed positive (e.g. an unresolved velocity grid).
SpdFactor factor_spd(const Mat3& tensor);

/// Discrete ellipsoidal Gaussian of one cell,
///   rho Lambda / (sqrt((2 pi)^3 det T) T_theta^{delta/2})
///     * exp(-(v_j - u)^T T^{-1} (v_j - u) / 2 - I_k^{2/delta} / T_theta).
/// The exponent separates, so a node value is the product of a velocity
/// factor (prefactor included) and an energy factor.
class GaussianKernel {
public:
  GaussianKernel(const MacroCell& cell, const PhaseGrid& grid, double lambda_delta);

  double prefactor() const { return prefactor_; }
  const SpdFactor& factor() const { return factor_; }
  /// prefactor * exp(-(v_j - u)^T T^{-1} (v_j - u) / 2), via a triangular solve.
  double velocity_factor(std::size_t j) const;
  std::span<const double> energy_factors() const { return energy_; }
  double operator()(std::size_t j, std::size_t k) const { return velocity_factor(j) * energy_[k]; }

private:
  const PhaseGrid* grid_;
  Vec3 u_;
  SpdFactor factor_;
  double prefactor_;
  std::vector<double> energy_;
};

/// Gaussian at every (j, k) node of one cell; `out` holds grid.cell_size()
/// values, energy index innermost.
void eval_gaussian_into(const MacroCell& cell, const PhaseGrid& grid, double lambda_delta,
                        std::span<double> out);

std::vector<double> eval_gaussian(const MacroCell& cell, const PhaseGrid& grid,
                                  double lambda_delta);

} // namespace polykin

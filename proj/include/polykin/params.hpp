#pragma once

#include <span>
#include <string>
#include <vector>

namespace polykin {

class PhaseGrid;

/// Model and norm parameters of the polyatomic ES-BGK relaxation.
struct SchemeParams {
  double nu = 0.0;    ///< Prandtl-fitting parameter, -1/2 < nu < 1.
  double theta = 1.0; ///< Relaxation-mixing parameter, 0 < theta <= 1.
  double delta = 2.0; ///< Internal degrees of freedom, delta > 0.
  double kappa = 1.0; ///< Knudsen number, kappa > 0.
  double q = 8.0;     ///< Weight exponent of the L_q^inf norm, q > 5 + delta.

  /// Throws OutOfRange on a hard violation. Soft conditions (delta > 2,
  /// outside the range covered by the convergence estimate) are returned as
  /// warning strings.
  std::vector<std::string> validate() const;
};

/// A_{nu,theta} = 1 / (1 - nu + nu theta).
double collision_frequency(double nu, double theta);

struct BlendFactors {
  double lambda = 1.0; ///< Weight of the isotropic temperature terms.
  double nu_bar = 0.0; ///< Weight of the stress tensor term.
};

/// lambda = (kappa + A dt) / (dt + kappa), nu_bar = kappa nu / (dt + kappa).
BlendFactors blend_factors(double nu, double theta, double kappa, double dt);

/// Discrete normalizer: 1 / sum_k exp(-I_k^{2/delta}) dI.
double normalizer_discrete(double delta, std::span<const double> energy_nodes, double di);
double normalizer_discrete(double delta, const PhaseGrid& grid);

/// Continuous normalizer 1 / Gamma(1 + delta/2). Only used as a reference.
double normalizer_continuous(double delta);

struct DerivedConstants {
  double a_nutheta = 1.0;
  double lambda = 1.0;
  double nu_bar = 0.0;
  double lambda_delta = 1.0;
  double dt = 0.0;

  static DerivedConstants compute(const SchemeParams& params, const PhaseGrid& grid, double dt);
};

} // namespace polykin

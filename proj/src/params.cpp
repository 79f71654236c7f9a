#include "polykin/params.hpp"

#include <cmath>
#include <string>

#include "polykin/errors.hpp"
#include "polykin/grid.hpp"
#include "polykin/summation.hpp"

namespace polykin {

namespace {

void check_nu_theta(double nu, double theta) {
  if (!(nu > -0.5 && nu < 1.0))
    throw OutOfRange("nu must satisfy -1/2 < nu < 1, got " + std::to_string(nu));
  if (!(theta > 0.0 && theta <= 1.0))
    throw OutOfRange("theta must satisfy 0 < theta <= 1, got " + std::to_string(theta));
}

} // namespace

std::vector<std::string> SchemeParams::validate() const {
  check_nu_theta(nu, theta);
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw OutOfRange("delta must be positive, got " + std::to_string(delta));
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw OutOfRange("kappa must be positive, got " + std::to_string(kappa));
  if (!(q > 5.0 + delta) || !std::isfinite(q))
    throw OutOfRange("q must exceed 5 + delta, got " + std::to_string(q));

  std::vector<std::string> warnings;
  if (delta > 2.0)
    warnings.push_back("delta = " + std::to_string(delta) +
                       " > 2: the first-order error estimate is only established for delta <= 2");
  return warnings;
}

double collision_frequency(double nu, double theta) {
  check_nu_theta(nu, theta);
  return 1.0 / (1.0 - nu + nu * theta);
}

BlendFactors blend_factors(double nu, double theta, double kappa, double dt) {
  const double a = collision_frequency(nu, theta);
  if (!(kappa > 0.0)) throw OutOfRange("kappa must be positive");
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw OutOfRange("dt must be nonnegative and finite");
  return {(kappa + a * dt) / (dt + kappa), kappa * nu / (dt + kappa)};
}

double normalizer_discrete(double delta, std::span<const double> energy_nodes, double di) {
  if (energy_nodes.empty()) throw DegenerateGrid("energy grid is empty");
  if (!(di > 0.0)) throw DegenerateGrid("energy spacing must be positive");
  if (!(delta > 0.0)) throw OutOfRange("delta must be positive");
  const double p = 2.0 / delta;
  const double sum = pairwise_sum(0, energy_nodes.size(), [&](std::size_t k) {
                       return std::exp(-std::pow(energy_nodes[k], p));
                     }) *
                     di;
  if (!(sum > 0.0)) throw DegenerateGrid("discrete normalizer sum underflows to zero");
  return 1.0 / sum;
}

double normalizer_discrete(double delta, const PhaseGrid& grid) {
  return normalizer_discrete(delta, grid.energy_nodes(), grid.di());
}

double normalizer_continuous(double delta) {
  if (!(delta > 0.0)) throw OutOfRange("delta must be positive");
  return 1.0 / std::tgamma(1.0 + 0.5 * delta);
}

DerivedConstants DerivedConstants::compute(const SchemeParams& params, const PhaseGrid& grid,
                                           double dt) {
  const BlendFactors b = blend_factors(params.nu, params.theta, params.kappa, dt);
  DerivedConstants c;
  c.a_nutheta = collision_frequency(params.nu, params.theta);
  c.lambda = b.lambda;
  c.nu_bar = b.nu_bar;
  c.lambda_delta = normalizer_discrete(params.delta, grid);
  c.dt = dt;
  return c;
}

} // namespace polykin

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "polykin/field.hpp"
#include "polykin/grid.hpp"
#include "polykin/moments.hpp"
#include "polykin/params.hpp"

namespace polykin::testing {

inline GridPtr small_grid(std::size_t n_x = 8, std::size_t n_v = 5, double v_max = 2.0,
                          std::size_t n_i = 4, double i_max = 4.0, double delta = 2.0) {
  return build_grid({n_x, n_v, v_max, n_i, i_max, delta});
}

/// Independent closed form of the isotropic polyatomic Maxwellian.
inline double maxwellian(double rho, const Vec3& u, double t, double delta, double lambda,
                         const Vec3& v, double energy) {
  const double eps = std::pow(energy, 2.0 / delta);
  return rho * lambda / (std::pow(2.0 * std::numbers::pi * t, 1.5) * std::pow(t, 0.5 * delta)) *
         std::exp(-(v - u).squaredNorm() / (2.0 * t) - eps / t);
}

/// Nonnegative field with independent uniform entries in [lo, hi).
inline DistField random_field(GridPtr grid, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  DistField f(std::move(grid));
  std::uniform_real_distribution<double> dist(lo, hi);
  for (double& x : f.values()) x = dist(rng);
  return f;
}

/// Random smooth positive field: a product of a positive x profile and a
/// Gaussian-like (v, I) profile, plus noise, so moments are well behaved.
inline DistField random_gas(GridPtr grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const PhaseGrid& g = *grid;
  const Vec3 u(u01(rng) - 0.5, u01(rng) - 0.5, u01(rng) - 0.5);
  const Vec3 t(0.5 + u01(rng), 0.5 + u01(rng), 0.5 + u01(rng));
  const double tint = 0.5 + u01(rng);
  const double phase = u01(rng);
  DistField f(grid);
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    const double rho = 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * (g.x(i) + phase));
    for (std::size_t j = 0; j < g.velocity_count(); ++j) {
      const Vec3 c = g.velocity(j) - u;
      const double vel = std::exp(-0.5 * (c.array().square() / t.array()).sum());
      for (std::size_t k = 0; k < g.n_i(); ++k)
        f(i, j, k) = rho * vel * std::exp(-g.energy_map(k) / tint) * (1.0 + 0.3 * u01(rng));
    }
  }
  return f;
}

} // namespace polykin::testing

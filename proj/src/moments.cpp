#include "polykin/moments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "parallel.hpp"
#include "polykin/errors.hpp"
#include "polykin/summation.hpp"

namespace polykin {

Mat3 blended_tensor(double t_delta, double t_tr, const Mat3& theta_tensor,
                    const SchemeParams& params, const BlendFactors& blend) {
  const double iso = blend.lambda * params.theta * t_delta +
                     blend.lambda * (1.0 - params.theta) * (1.0 - params.nu) * t_tr;
  Mat3 t = (1.0 - params.theta) * blend.nu_bar * theta_tensor;
  t.diagonal().array() += iso;
  return t;
}

MacroCell cell_moments(std::span<const double> block, const PhaseGrid& grid,
                       const SchemeParams& params, const BlendFactors& blend,
                       std::size_t cell_index) {
  const std::size_t nv3 = grid.velocity_count();
  const std::size_t ni = grid.n_i();
  const auto eps = grid.energy_map_nodes();

  // Energy sums per velocity node; centered velocity moments are then taken
  // over these aggregates in a second pass once u is known.
  std::vector<double> mass(nv3);
  std::vector<double> internal(nv3);
  for (std::size_t j = 0; j < nv3; ++j) {
    const double* f = block.data() + j * ni;
    for (std::size_t k = 0; k < ni; ++k)
      if (!(f[k] >= 0.0))
        throw NegativeField("distribution is negative or not finite", cell_index);
    mass[j] = pairwise_sum(0, ni, [f](std::size_t k) { return f[k]; });
    internal[j] = pairwise_sum(0, ni, [f, eps](std::size_t k) { return f[k] * eps[k]; });
  }

  const double total = pairwise_sum(mass);
  MacroCell c;
  c.rho = total * grid.phase_weight();
  if (!(c.rho >= kZeroDensityThreshold)) throw ZeroDensity("cell mass vanishes", cell_index);

  for (int a = 0; a < 3; ++a)
    c.u[a] = pairwise_sum(0, nv3, [&](std::size_t j) { return mass[j] * grid.velocity(j)[a]; }) /
             total;

  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      const double s = pairwise_sum(0, nv3, [&](std::size_t j) {
        const Vec3 d = grid.velocity(j) - c.u;
        return mass[j] * d[a] * d[b];
      });
      c.theta_tensor(a, b) = s / total;
      c.theta_tensor(b, a) = s / total;
    }

  c.t_tr = pairwise_sum(0, nv3, [&](std::size_t j) {
             return mass[j] * (grid.velocity(j) - c.u).squaredNorm();
           }) /
           (3.0 * total);
  const double delta = params.delta;
  c.t_int = (2.0 / delta) * pairwise_sum(internal) / total;
  c.t_delta = (3.0 * c.t_tr + delta * c.t_int) / (3.0 + delta);
  c.t_theta = params.theta * c.t_delta + (1.0 - params.theta) * c.t_int;
  c.t_blend = blended_tensor(c.t_delta, c.t_tr, c.theta_tensor, params, blend);
  return c;
}

MacroFields compute_moments(const DistField& field, const SchemeParams& params, double dt) {
  const BlendFactors blend = blend_factors(params.nu, params.theta, params.kappa, dt);
  const PhaseGrid& g = field.grid();
  MacroFields out;
  out.cells.resize(g.n_x());
  detail::parallel_for(g.n_x(), [&](std::size_t i) {
    out.cells[i] = cell_moments(field.cell(i), g, params, blend, i);
  });
  return out;
}

void SandwichReport::require() const {
  if (ok()) return;
  std::ostringstream msg;
  msg << "temperature tensor bounds violated: " << violations << " of " << trials
      << " directions, worst lower margin " << worst_lower_margin << ", worst upper margin "
      << worst_upper_margin << ", direction (" << worst_direction.transpose() << ")";
  if (!relaxation_temperature_ok) msg << "; relaxation temperature outside its bounds";
  throw BoundViolated(msg.str());
}

SandwichReport tensor_sandwich_check(const MacroCell& cell, const SchemeParams& params, double dt,
                                     std::size_t trials, std::uint64_t seed,
                                     double relative_slack) {
  const BlendFactors blend = blend_factors(params.nu, params.theta, params.kappa, dt);
  const double c_nu = std::max(1.0 - params.nu, 1.0 + 2.0 * params.nu);
  const double delta = params.delta;
  const double theta = params.theta;

  SandwichReport r;
  r.trials = trials;
  r.lower_bound = blend.lambda * theta * cell.t_delta;
  r.upper_bound = blend.lambda * c_nu * (3.0 + delta * (1.0 - theta)) * cell.t_delta / 3.0;
  r.worst_lower_margin = std::numeric_limits<double>::infinity();
  r.worst_upper_margin = std::numeric_limits<double>::infinity();
  const double scale = std::abs(r.upper_bound);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    Vec3 k(normal(rng), normal(rng), normal(rng));
    if (k.norm() == 0.0) k = Vec3::UnitX();
    k.normalize();
    const double form = k.dot(cell.t_blend * k);
    const double lower_margin = (form - r.lower_bound) / scale;
    const double upper_margin = (r.upper_bound - form) / scale;
    r.worst_lower_margin = std::min(r.worst_lower_margin, lower_margin);
    r.worst_upper_margin = std::min(r.worst_upper_margin, upper_margin);
    if (lower_margin < -relative_slack || upper_margin < -relative_slack) ++r.violations;
    if (std::min(lower_margin, upper_margin) < worst) {
      worst = std::min(lower_margin, upper_margin);
      r.worst_direction = k;
    }
  }

  const double t_lo = theta * cell.t_delta;
  const double t_hi = (delta + 3.0 * (1.0 - theta)) / delta * cell.t_delta;
  const double t_scale = std::max(std::abs(t_hi), std::numeric_limits<double>::min());
  r.relaxation_temperature_ok = (cell.t_theta - t_lo) / t_scale >= -relative_slack &&
                                (t_hi - cell.t_theta) / t_scale >= -relative_slack;
  return r;
}

} // namespace polykin

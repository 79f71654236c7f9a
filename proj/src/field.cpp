#include "polykin/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "polykin/errors.hpp"

namespace polykin {

DistField::DistField(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_->size(), fill) {}

DistField sample(const InitialFunction& f0, GridPtr grid, double shift_dt) {
  if (!(shift_dt >= 0.0)) throw OutOfRange("sample shift must be nonnegative");
  DistField out(grid);
  const PhaseGrid& g = *grid;
  detail::parallel_for(g.n_x(), [&](std::size_t i) {
    auto cell = out.cell(i);
    for (std::size_t j = 0; j < g.velocity_count(); ++j) {
      const Vec3 v = g.velocity(j);
      double y = std::fmod(g.x(i) - v.x() * shift_dt, 1.0);
      if (y < 0.0) y += 1.0;
      if (y >= 1.0) y = 0.0;
      for (std::size_t k = 0; k < g.n_i(); ++k) {
        const double value = f0(y, v, g.energy(k));
        if (!(value >= 0.0))
          throw NegativeInitialData("initial data is negative or not finite at node (" +
                                    std::to_string(i) + ", " + std::to_string(j) + ", " +
                                    std::to_string(k) + ")");
        cell[j * g.n_i() + k] = value;
      }
    }
  });
  return out;
}

namespace {

// Max over i of |f[i, jk]| per (j, k), then the weighted sup over (j, k).
// Multiplication by a positive weight is monotone under rounding, so this is
// bit-identical to taking the sup of the weighted values.
template <class Value>
double weighted_sup(const PhaseGrid& g, double q, const Value& value) {
  const auto weights = g.norm_weights(q);
  const std::size_t m = g.cell_size();
  std::vector<double> peak(m, 0.0);
  bool has_nan = false;
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    const std::size_t base = i * m;
    for (std::size_t jk = 0; jk < m; ++jk) {
      const double x = std::abs(value(base + jk));
      has_nan |= std::isnan(x);
      peak[jk] = std::max(peak[jk], x);
    }
  }
  if (has_nan) return std::numeric_limits<double>::quiet_NaN();
  double sup = 0.0;
  for (std::size_t jk = 0; jk < m; ++jk) sup = std::max(sup, peak[jk] * (*weights)[jk]);
  return sup;
}

} // namespace

double weighted_sup_norm(const DistField& field, double q) {
  const auto v = field.values();
  return weighted_sup(field.grid(), q, [v](std::size_t n) { return v[n]; });
}

double error_sup_norm(const DistField& a, const DistField& b, double q) {
  if (!a.grid().same_layout(b.grid())) throw GridMismatch("fields live on different grids");
  const auto va = a.values();
  const auto vb = b.values();
  return weighted_sup(a.grid(), q, [va, vb](std::size_t n) { return va[n] - vb[n]; });
}

} // namespace polykin

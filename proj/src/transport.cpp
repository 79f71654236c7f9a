#include "polykin/transport.hpp"

#include <cmath>

#include "parallel.hpp"
#include "polykin/errors.hpp"

namespace polykin {

AdvectionPlan::AdvectionPlan(const PhaseGrid& grid, double dt) : dt_(dt) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw OutOfRange("dt must be nonnegative and finite");
  offset_.resize(grid.n_v());
  weight_.resize(grid.n_v());
  for (std::size_t a = 0; a < grid.n_v(); ++a) {
    const FootWeight f = foot(0, grid.axis_node(a), dt, grid);
    offset_[a] = f.s;
    weight_[a] = f.a;
  }
}

void advect_into(const AdvectionPlan& plan, const DistField& in, DistField& out) {
  const PhaseGrid& g = in.grid();
  if (!g.same_layout(out.grid())) throw GridMismatch("advection target has a different grid");
  const std::size_t n_x = g.n_x();
  const std::size_t ni = g.n_i();
  const std::size_t plane = g.n_v() * g.n_v() * ni; // one first-axis slab of a cell
  const auto src = in.values();
  auto dst = out.values();

  detail::parallel_for(n_x, [&](std::size_t i) {
    for (std::size_t a = 0; a < g.n_v(); ++a) {
      const std::size_t s0 = (i + plan.offset(a)) % n_x;
      const std::size_t s1 = (s0 + 1) % n_x;
      const double w = plan.weight(a);
      const double* lo = src.data() + s0 * g.cell_size() + a * plane;
      const double* hi = src.data() + s1 * g.cell_size() + a * plane;
      double* target = dst.data() + i * g.cell_size() + a * plane;
      // std::lerp stays within [hi, lo] and returns lo exactly at w = 1.
      for (std::size_t n = 0; n < plane; ++n) target[n] = std::lerp(hi[n], lo[n], w);
    }
  });
}

DistField advect(const DistField& field, double dt) {
  DistField out(field.grid_ptr());
  advect_into(AdvectionPlan(field.grid(), dt), field, out);
  return out;
}

} // namespace polykin

#pragma once

#include <cstddef>
#include <vector>

#include "polykin/field.hpp"
#include "polykin/grid.hpp"

namespace polykin {

/// Per-axis-node interpolation data for one (grid, dt) pair. The foot weight
/// depends only on the first velocity component, and the source cell is a
/// fixed circular offset of the target cell.
class AdvectionPlan {
public:
  AdvectionPlan(const PhaseGrid& grid, double dt);

  double dt() const { return dt_; }
  /// Source cell offset for first-axis node a: s(i) = (i + offset) mod n_x.
  std::size_t offset(std::size_t a) const { return offset_[a]; }
  double weight(std::size_t a) const { return weight_[a]; }

private:
  double dt_;
  std::vector<std::size_t> offset_;
  std::vector<double> weight_;
};

/// out[i,j,k] = a f[s,j,k] + (1 - a) f[s+1,j,k] with (s, a) = foot(i, v_j^1, dt).
void advect_into(const AdvectionPlan& plan, const DistField& in, DistField& out);

DistField advect(const DistField& field, double dt);

} // namespace polykin

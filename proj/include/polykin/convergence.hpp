#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polykin/field.hpp"

namespace polykin {

struct ConvergenceRow {
  std::string level; ///< Resolution descriptor, e.g. "n_x=32 dt=0.03125".
  double h = 0.0;
  double error = 0.0;
  std::optional<double> observed_order; ///< Empty for the coarsest level.
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;

  std::vector<double> orders() const;
  void write_csv(std::ostream& os) const;
  void write_markdown(std::ostream& os) const;
};

struct RefinementLevel {
  double h = 0.0;
  double error = 0.0;
  std::string label;
};

/// order_i = log(e_{i-1} / e_i) / log(h_{i-1} / h_i). Needs at least three
/// levels with strictly decreasing h and strictly decreasing positive errors;
/// anything else throws DegenerateTable.
ConvergenceTable observed_order(std::span<const RefinementLevel> levels);

/// Samples a finer field at the nodes of a coarser spatial grid with the same
/// velocity and energy layout. n_x of `fine` must be a multiple of n_x of
/// `coarse`; otherwise throws GridMismatch.
DistField restrict_to(const DistField& fine, const GridPtr& coarse);

} // namespace polykin

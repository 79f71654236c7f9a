#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "polykin/grid.hpp"
#include "polykin/types.hpp"

namespace polykin {

/// Discrete distribution f_{i,j,k} on a phase grid.
class DistField {
public:
  DistField() = default;
  explicit DistField(GridPtr grid, double fill = 0.0);

  const PhaseGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  /// Contiguous (j, k) block of spatial cell i.
  std::span<double> cell(std::size_t i) {
    return std::span<double>(values_).subspan(i * grid_->cell_size(), grid_->cell_size());
  }
  std::span<const double> cell(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * grid_->cell_size(), grid_->cell_size());
  }

  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return values_[grid_->index(i, j, k)];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[grid_->index(i, j, k)];
  }

private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// f0(x, v, I) evaluated at phase-space points.
using InitialFunction = std::function<double(double x, const Vec3& v, double energy)>;

/// values[i,j,k] = f0(x_i - v_j^1 shift_dt mod 1, v_j, I_k). shift_dt = 0
/// samples f^0; shift_dt = dt samples the exact feet for the first step.
DistField sample(const InitialFunction& f0, GridPtr grid, double shift_dt);

/// sup_{i,j,k} |f| (1 + |v_j|^2 + I_k^{2/delta})^{q/2}.
double weighted_sup_norm(const DistField& field, double q);

/// Weighted sup norm of a - b. Throws GridMismatch on different layouts.
double error_sup_norm(const DistField& a, const DistField& b, double q);

} // namespace polykin

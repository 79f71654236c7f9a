#include "polykin/gaussian.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>

#include "polykin/errors.hpp"

namespace polykin {

SpdFactor factor_spd(const Mat3& tensor) {
  if (!tensor.allFinite()) throw NonSpdTensor("temperature tensor is not finite", std::nullopt);
  Eigen::LLT<Mat3> llt(tensor);
  if (llt.info() != Eigen::Success)
    throw NonSpdTensor("temperature tensor is not positive definite", std::nullopt);
  SpdFactor f;
  f.lower = llt.matrixL();
  const Vec3 diag = f.lower.diagonal();
  if (!(diag.minCoeff() > 0.0))
    throw NonSpdTensor("temperature tensor is not positive definite", std::nullopt);
  f.log_det = 2.0 * (std::log(diag[0]) + std::log(diag[1]) + std::log(diag[2]));
  return f;
}

GaussianKernel::GaussianKernel(const MacroCell& cell, const PhaseGrid& grid, double lambda_delta)
    : grid_(&grid), u_(cell.u) {
  if (!(cell.rho > 0.0)) throw ZeroDensity("Gaussian of a vacuum cell", std::nullopt);
  if (!(cell.t_theta > 0.0) || !std::isfinite(cell.t_theta))
    throw DegenerateTemperature("relaxation temperature must be positive", std::nullopt);
  factor_ = factor_spd(cell.t_blend);

  const double shape = std::exp(-1.5 * std::log(2.0 * std::numbers::pi) - 0.5 * factor_.log_det -
                                0.5 * grid.delta() * std::log(cell.t_theta));
  prefactor_ = cell.rho * (lambda_delta * shape);
  if (!std::isfinite(prefactor_))
    throw DegenerateTemperature("Gaussian normalization overflows; temperature has collapsed",
                                std::nullopt);

  energy_.resize(grid.n_i());
  for (std::size_t k = 0; k < grid.n_i(); ++k)
    energy_[k] = std::exp(-grid.energy_map(k) / cell.t_theta);
}

double GaussianKernel::velocity_factor(std::size_t j) const {
  const Vec3 y = factor_.lower.triangularView<Eigen::Lower>().solve(Vec3(grid_->velocity(j) - u_));
  return prefactor_ * std::exp(-0.5 * y.squaredNorm());
}

void eval_gaussian_into(const MacroCell& cell, const PhaseGrid& grid, double lambda_delta,
                        std::span<double> out) {
  const GaussianKernel kernel(cell, grid, lambda_delta);
  const std::size_t ni = grid.n_i();
  const auto energy = kernel.energy_factors();
  for (std::size_t j = 0; j < grid.velocity_count(); ++j) {
    const double vf = kernel.velocity_factor(j);
    double* row = out.data() + j * ni;
    for (std::size_t k = 0; k < ni; ++k) row[k] = vf * energy[k];
  }
}

std::vector<double> eval_gaussian(const MacroCell& cell, const PhaseGrid& grid,
                                  double lambda_delta) {
  std::vector<double> out(grid.cell_size());
  eval_gaussian_into(cell, grid, lambda_delta, out);
  return out;
}

} // namespace polykin

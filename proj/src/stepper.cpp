#include "polykin/stepper.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "polykin/errors.hpp"
#include "polykin/gaussian.hpp"

namespace polykin {

double relaxation_weight(const SchemeParams& params, double dt) {
  const double a_dt = collision_frequency(params.nu, params.theta) * dt;
  return a_dt / (params.kappa + a_dt);
}

void relax_into(const DistField& f_tilde, const MacroFields& macro, const SchemeParams& params,
                double dt, DistField& out, double* gaussian_norm) {
  const PhaseGrid& g = f_tilde.grid();
  if (!g.same_layout(out.grid())) throw GridMismatch("relaxation target has a different grid");
  if (macro.size() != g.n_x()) throw GridMismatch("macroscopic fields do not match the grid");
  if (!(dt >= 0.0)) throw OutOfRange("dt must be nonnegative");

  const double w = relaxation_weight(params, dt);
  const double lambda_delta = normalizer_discrete(params.delta, g);
  const std::size_t ni = g.n_i();
  std::shared_ptr<const std::vector<double>> weights;
  if (gaussian_norm) weights = g.norm_weights(params.q);
  std::vector<double> cell_norm(g.n_x(), 0.0);

  detail::parallel_for(g.n_x(), [&](std::size_t i) {
    std::optional<GaussianKernel> kernel;
    try {
      kernel.emplace(macro[i], g, lambda_delta);
    } catch (CellError& e) {
      e.locate(i);
      throw;
    }
    const auto energy = kernel->energy_factors();
    const auto src = f_tilde.cell(i);
    auto dst = out.cell(i);
    double sup = 0.0;
    for (std::size_t j = 0; j < g.velocity_count(); ++j) {
      const double vf = kernel->velocity_factor(j);
      const std::size_t row = j * ni;
      // lerp keeps the result between f~ and M, and returns f~ when they agree.
      for (std::size_t k = 0; k < ni; ++k)
        dst[row + k] = std::lerp(src[row + k], vf * energy[k], w);
      if (weights)
        for (std::size_t k = 0; k < ni; ++k)
          sup = std::max(sup, vf * energy[k] * (*weights)[row + k]);
    }
    cell_norm[i] = sup;
  });
  if (gaussian_norm) *gaussian_norm = *std::max_element(cell_norm.begin(), cell_norm.end());
}

DistField relax(const DistField& f_tilde, const MacroFields& macro, const SchemeParams& params,
                double dt) {
  DistField out(f_tilde.grid_ptr());
  relax_into(f_tilde, macro, params, dt, out);
  return out;
}

namespace {

StepReport describe_field(const DistField& f, double q) {
  StepReport r;
  r.conserved = conserved_quantities(f);
  r.entropy = entropy(f);
  r.norm_q = weighted_sup_norm(f, q);
  return r;
}

ConservedQuantities difference(const ConservedQuantities& a, const ConservedQuantities& b) {
  return {a.mass - b.mass, a.momentum - b.momentum, a.energy - b.energy};
}

} // namespace

std::pair<DistField, StepReport> step(const DistField& f, const SchemeParams& params, double dt) {
  if (!(dt > 0.0)) throw OutOfRange("dt must be positive");
  const DistField f_tilde = advect(f, dt);
  const MacroFields macro = compute_moments(f_tilde, params, dt);
  DistField out = relax(f_tilde, macro, params, dt);
  StepReport report = describe_field(out, params.q);
  report.step = 1;
  report.time = dt;
  report.defect = difference(report.conserved, conserved_quantities(f));
  return {std::move(out), report};
}

Solver::Solver(GridPtr grid, SchemeParams params, double dt, SolverOptions options)
    : grid_(std::move(grid)),
      params_(params),
      dt_(dt),
      options_(options),
      relax_weight_(0.0),
      warnings_(params.validate()),
      plan_(*grid_, dt) {
  if (!(dt > 0.0)) throw OutOfRange("dt must be positive");
  if (params_.delta != grid_->delta())
    throw InvalidConfig("scheme delta does not match the grid's energy map");
  relax_weight_ = options_.relaxation ? relaxation_weight(params_, dt_) : 0.0;
}

StepReport Solver::describe(const DistField& field) const {
  StepReport r = describe_field(field, params_.q);
  r.step = step_;
  r.time = time();
  return r;
}

void Solver::initialize(const InitialFunction& f0) {
  initialize(sample(f0, grid_, 0.0));
  exact_feet_ = sample(f0, grid_, dt_);
}

void Solver::initialize(DistField f0) {
  if (!f0.grid().same_layout(*grid_)) throw GridMismatch("initial field has a different grid");
  field_ = std::move(f0);
  advected_ = DistField(grid_);
  exact_feet_.reset();
  step_ = 0;
  report_ = describe(field_);
}

StepReport Solver::advance() {
  if (field_.values().empty()) throw InvalidConfig("solver used before initialize()");
  norms_.f = report_.norm_q;
  if (exact_feet_) {
    std::swap(advected_, *exact_feet_);
    exact_feet_.reset();
  } else {
    advect_into(plan_, field_, advected_);
  }
  norms_.f_tilde = weighted_sup_norm(advected_, params_.q);

  if (options_.relaxation) {
    macro_ = compute_moments(advected_, params_, dt_);
    relax_into(advected_, macro_, params_, dt_, field_, &norms_.gaussian);
  } else {
    norms_.gaussian = 0.0;
    std::copy(advected_.values().begin(), advected_.values().end(), field_.values().begin());
  }

  const ConservedQuantities before = report_.conserved;
  ++step_;
  report_ = describe(field_);
  report_.defect = difference(report_.conserved, before);
  return report_;
}

RunResult run(const RunConfig& config, const StepObserver& observer) {
  Solver solver(config.grid, config.params, config.dt, config.options);
  solver.initialize(config.initial);

  RunResult result;
  result.reports.push_back(solver.current_report());
  auto maybe_snapshot = [&] {
    const std::size_t n = solver.step_index();
    if (std::find(config.snapshot_steps.begin(), config.snapshot_steps.end(), n) !=
        config.snapshot_steps.end())
      result.snapshots.push_back({n, solver.time(), solver.field()});
  };
  maybe_snapshot();

  for (std::size_t n = 0; n < config.n_steps; ++n) {
    try {
      result.reports.push_back(solver.advance());
    } catch (Error& e) {
      e.add_context("step " + std::to_string(n + 1));
      throw;
    }
    if (observer) observer(solver, result.reports.back());
    maybe_snapshot();
  }
  result.final_field = solver.field();
  return result;
}

} // namespace polykin

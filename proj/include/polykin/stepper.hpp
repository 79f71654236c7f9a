#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "polykin/diagnostics.hpp"
#include "polykin/field.hpp"
#include "polykin/moments.hpp"
#include "polykin/params.hpp"
#include "polykin/transport.hpp"

namespace polykin {

struct StepReport {
  std::size_t step = 0; ///< Number of steps taken; the report describes f^step.
  double time = 0.0;
  ConservedQuantities conserved;
  ConservedQuantities defect; ///< conserved(f^step) - conserved(f^{step-1}).
  double entropy = 0.0;
  double norm_q = 0.0;
};

/// Relaxation weight A dt / (kappa + A dt) of the Gaussian in the update.
double relaxation_weight(const SchemeParams& params, double dt);

/// out = (kappa f~ + A dt M(f~)) / (kappa + A dt), nodewise, with M built
/// from `macro`. If `gaussian_norm` is given it receives ||M(f~)||_q.
void relax_into(const DistField& f_tilde, const MacroFields& macro, const SchemeParams& params,
                double dt, DistField& out, double* gaussian_norm = nullptr);

DistField relax(const DistField& f_tilde, const MacroFields& macro, const SchemeParams& params,
                double dt);

/// One full step: advect, take moments of f~, relax towards M(f~).
std::pair<DistField, StepReport> step(const DistField& f, const SchemeParams& params, double dt);

struct SolverOptions {
  bool relaxation = true; ///< false gives pure semi-Lagrangian transport.
};

/// Time loop over two reusable field buffers. The first step uses the exact
/// feet of the initial function when one is supplied.
class Solver {
public:
  Solver(GridPtr grid, SchemeParams params, double dt, SolverOptions options = {});

  void initialize(const InitialFunction& f0);
  void initialize(DistField f0);

  StepReport advance();

  const PhaseGrid& grid() const { return *grid_; }
  const SchemeParams& params() const { return params_; }
  double dt() const { return dt_; }
  double time() const { return static_cast<double>(step_) * dt_; }
  std::size_t step_index() const { return step_; }
  double relax_weight() const { return relax_weight_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// f^n.
  const DistField& field() const { return field_; }
  /// f~^{n-1}, the advected field of the last step.
  const DistField& advected() const { return advected_; }
  /// Moments of f~^{n-1} at this dt.
  const MacroFields& macro() const { return macro_; }
  /// Norms measured during the last step.
  const StepNorms& last_norms() const { return norms_; }
  /// Report describing the current field.
  const StepReport& current_report() const { return report_; }

private:
  StepReport describe(const DistField& field) const;

  GridPtr grid_;
  SchemeParams params_;
  double dt_;
  SolverOptions options_;
  double relax_weight_;
  std::vector<std::string> warnings_;
  AdvectionPlan plan_;
  DistField field_;
  DistField advected_;
  std::optional<DistField> exact_feet_;
  MacroFields macro_;
  StepNorms norms_;
  StepReport report_;
  std::size_t step_ = 0;
};

struct Snapshot {
  std::size_t step = 0;
  double time = 0.0;
  DistField field;
};

struct RunConfig {
  GridPtr grid;
  SchemeParams params;
  double dt = 0.0;
  std::size_t n_steps = 0;
  InitialFunction initial;
  SolverOptions options;
  std::vector<std::size_t> snapshot_steps;
};

struct RunResult {
  std::vector<StepReport> reports; ///< reports[0] describes f^0.
  DistField final_field;
  std::vector<Snapshot> snapshots;
};

using StepObserver = std::function<void(const Solver&, const StepReport&)>;

/// n_steps applications of the scheme from the sampled initial condition.
/// Errors are rethrown with the step index attached.
RunResult run(const RunConfig& config, const StepObserver& observer = {});

} // namespace polykin

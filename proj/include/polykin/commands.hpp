#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polykin/convergence.hpp"
#include "polykin/diagnostics.hpp"
#include "polykin/scenario.hpp"
#include "polykin/stepper.hpp"

namespace polykin {

struct SimulateResult {
  RunResult run;
  std::optional<EnvelopeReport> envelope;
  std::vector<std::string> warnings;
  std::vector<std::filesystem::path> written;

  /// Every step report has finite conserved quantities, entropy and norm.
  bool all_finite() const;
};

/// Runs the scenario. When `out_dir` is set writes
///   steps.csv      one row per step (kStepCsvHeader),
///   macro.csv      macroscopic fields at t = 0, the snapshot times and T^f,
///   snapshot_<n>.bin for every snapshot step n.
/// With an envelope in the scenario the per-step envelopes are monitored.
SimulateResult cmd_simulate(const Scenario& scenario);

enum class RefinementMode {
  Coupled, ///< dt = dx = 1 / n_x at every level.
  Space,   ///< dt fixed by the scenario, only n_x varies.
};

struct ConvergenceResult {
  ConvergenceTable table;
  std::vector<std::filesystem::path> written;
};

/// Runs every level (values of n_x, strictly increasing) and a reference
/// level, then measures the weighted sup-norm error of each level against
/// the reference restricted to its nodes. Writes convergence.csv and
/// convergence.md when `out_dir` is set.
ConvergenceResult cmd_convergence(const Scenario& scenario, const std::vector<std::size_t>& levels,
                                  std::size_t reference, RefinementMode mode);

struct SweepRow {
  double kappa = 0.0;
  bool bounded = false;            ///< Every report finite.
  double max_norm = 0.0;           ///< max_n ||f^n||_q.
  double equilibrium_distance = 0.0; ///< ||f - M(f)||_q at T^f.
  double mass_drift = 0.0;         ///< |mass(T^f) - mass(0)| / mass(0).
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::filesystem::path> written;
};

inline constexpr const char* kSweepCsvHeader =
    "kappa,bounded,max_norm_q,equilibrium_distance,mass_drift";

/// Runs the scenario once per kappa at the scenario's dt. Writes sweep.csv
/// when `out_dir` is set.
SweepResult cmd_stiffness_sweep(const Scenario& scenario, const std::vector<double>& kappas);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

} // namespace polykin

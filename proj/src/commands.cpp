#include "polykin/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "io_format.hpp"
#include "polykin/errors.hpp"
#include "polykin/io.hpp"

namespace polykin {

namespace {

bool finite(const StepReport& r) {
  return std::isfinite(r.conserved.mass) && r.conserved.momentum.allFinite() &&
         std::isfinite(r.conserved.energy) && std::isfinite(r.entropy) && std::isfinite(r.norm_q);
}

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ofstream os(path, std::ios::out | std::ios::trunc | mode);
  if (!os) throw InvalidConfig("cannot open " + path.string() + " for writing");
  return os;
}

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidConfig("cannot create output directory " + dir.string() + ": " + ec.message());
}

} // namespace

bool SimulateResult::all_finite() const {
  return std::all_of(run.reports.begin(), run.reports.end(), finite);
}

SimulateResult cmd_simulate(const Scenario& scenario) {
  RunConfig config = make_run_config(scenario);
  const std::size_t n_steps = config.n_steps;
  const bool write = !scenario.out_dir.empty();
  SimulateResult result;
  result.warnings = config.params.validate();

  std::optional<EnvelopeMonitor> monitor;
  if (scenario.envelope) {
    StabilityEnvelope env = *scenario.envelope;
    if (scenario.envelope_fit_c01) {
      const DistField f0 = sample(config.initial, config.grid, 0.0);
      env = fit_envelope(f0, env.c02, env.a_exp, env.b_exp);
    }
    env.validate();
    const double w = config.options.relaxation ? relaxation_weight(config.params, config.dt) : 0.0;
    monitor.emplace(env, config.params.q, w);
  }

  // Macro rows at t = 0, the snapshot steps and the final step.
  std::set<std::size_t> macro_steps(config.snapshot_steps.begin(), config.snapshot_steps.end());
  macro_steps.insert(0);
  macro_steps.insert(n_steps);
  std::ostringstream macro_rows;
  auto record_macro = [&](const DistField& f, double time) {
    write_macro_rows(macro_rows, time, f.grid(), compute_moments(f, config.params, config.dt));
  };
  if (write) record_macro(sample(config.initial, config.grid, 0.0), 0.0);

  result.run = run(config, [&](const Solver& solver, const StepReport& report) {
    if (monitor) monitor->observe(solver.step_index() - 1, solver.advected(), solver.last_norms());
    if (write && macro_steps.count(report.step)) record_macro(solver.field(), report.time);
  });
  if (monitor) result.envelope = monitor->report();

  if (write) {
    const auto& dir = scenario.out_dir;
    prepare_dir(dir);
    {
      auto os = open_output(dir / "steps.csv");
      os << kStepCsvHeader << '\n';
      for (const auto& r : result.run.reports) write_step_row(os, r);
      result.written.push_back(dir / "steps.csv");
    }
    {
      auto os = open_output(dir / "macro.csv");
      os << kMacroCsvHeader << '\n' << macro_rows.str();
      result.written.push_back(dir / "macro.csv");
    }
    {
      auto os = open_output(dir / "scenario.resolved");
      os << format_scenario(scenario);
      result.written.push_back(dir / "scenario.resolved");
    }
    for (const auto& snap : result.run.snapshots) {
      const auto path = dir / ("snapshot_" + std::to_string(snap.step) + ".bin");
      write_snapshot(path, snap.field, config.params.q, snap.time);
      result.written.push_back(path);
    }
  }
  return result;
}

ConvergenceResult cmd_convergence(const Scenario& scenario, const std::vector<std::size_t>& levels,
                                  std::size_t reference, RefinementMode mode) {
  scenario.validate();
  if (levels.size() < 3) throw ValidationError("levels", "need at least three levels");
  for (std::size_t n = 1; n < levels.size(); ++n) {
    if (levels[n] == levels[n - 1]) throw ValidationError("levels", "duplicated level");
    if (levels[n] < levels[n - 1]) throw ValidationError("levels", "levels must increase");
  }
  if (reference <= levels.back())
    throw ValidationError("reference", "reference must be finer than every level");
  for (std::size_t n_x : levels)
    if (n_x < 2 || reference % n_x != 0)
      throw ValidationError("reference", "reference n_x must be a multiple of every level");

  auto run_level = [&](std::size_t n_x) {
    Scenario s = scenario;
    s.grid.n_x = n_x;
    if (mode == RefinementMode::Coupled) s.dt = 1.0 / static_cast<double>(n_x);
    try {
      s.validate();
    } catch (ValidationError&) {
      throw ValidationError("levels", "t_final is not a multiple of dt = " +
                                          detail::format_double(s.dt) + " at n_x = " +
                                          std::to_string(n_x));
    }
    s.snapshot_times.clear();
    RunConfig config = make_run_config(s);
    try {
      return run(config).final_field;
    } catch (Error& e) {
      e.add_context("level n_x=" + std::to_string(n_x));
      throw;
    }
  };

  std::vector<DistField> fields;
  for (std::size_t n_x : levels) fields.push_back(run_level(n_x));
  const DistField ref = run_level(reference);

  std::vector<RefinementLevel> rows;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const DistField restricted = restrict_to(ref, fields[n].grid_ptr());
    const double h = 1.0 / static_cast<double>(levels[n]);
    std::string label = "n_x=" + std::to_string(levels[n]);
    label += " dt=" + detail::format_double(mode == RefinementMode::Coupled ? h : scenario.dt);
    rows.push_back({h, error_sup_norm(fields[n], restricted, scenario.params.q), label});
  }

  ConvergenceResult result;
  result.table = observed_order(rows);
  if (!scenario.out_dir.empty()) {
    prepare_dir(scenario.out_dir);
    auto csv = open_output(scenario.out_dir / "convergence.csv");
    result.table.write_csv(csv);
    auto md = open_output(scenario.out_dir / "convergence.md");
    result.table.write_markdown(md);
    result.written = {scenario.out_dir / "convergence.csv", scenario.out_dir / "convergence.md"};
  }
  return result;
}

SweepResult cmd_stiffness_sweep(const Scenario& scenario, const std::vector<double>& kappas) {
  if (kappas.empty()) throw ValidationError("kappa", "need at least one value");
  for (double k : kappas)
    if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("kappa", "every kappa must be positive");
  scenario.validate();

  SweepResult result;
  for (double kappa : kappas) {
    Scenario s = scenario;
    s.params.kappa = kappa;
    s.snapshot_times.clear();
    RunConfig config = make_run_config(s);
    RunResult run_result;
    try {
      run_result = run(config);
    } catch (Error& e) {
      e.add_context("kappa=" + detail::format_double(kappa));
      throw;
    }
    SweepRow row;
    row.kappa = kappa;
    row.bounded = std::all_of(run_result.reports.begin(), run_result.reports.end(), finite);
    for (const auto& r : run_result.reports) row.max_norm = std::max(row.max_norm, r.norm_q);
    row.equilibrium_distance = equilibrium_distance(run_result.final_field, s.params);
    const double m0 = run_result.reports.front().conserved.mass;
    row.mass_drift = std::abs(run_result.reports.back().conserved.mass - m0) / m0;
    result.rows.push_back(row);
  }
  if (!scenario.out_dir.empty()) {
    prepare_dir(scenario.out_dir);
    auto os = open_output(scenario.out_dir / "sweep.csv");
    write_sweep_csv(os, result.rows);
    result.written.push_back(scenario.out_dir / "sweep.csv");
  }
  return result;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  using detail::format_double;
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows)
    os << format_double(r.kappa) << ',' << (r.bounded ? 1 : 0) << ',' << format_double(r.max_norm)
       << ',' << format_double(r.equilibrium_distance) << ',' << format_double(r.mass_drift)
       << '\n';
}

} // namespace polykin

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "polykin/commands.hpp"
#include "polykin/errors.hpp"
#include "polykin/scenario.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 3;

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

polykin::Scenario load(const std::string& path, const std::string& out) {
  polykin::Scenario s = polykin::parse_scenario(path);
  if (!out.empty()) s.out_dir = out;
  return s;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-Lagrangian solver for the polyatomic ES-BGK model"};
  app.require_subcommand(1);

  int threads = 0;
  std::string out;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads, "Maximum number of worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", out, "Output directory (overrides out_dir)");
  };

  std::string scenario_path;

  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write CSV outputs");
  simulate->add_option("scenario", scenario_path, "Scenario file")->required();
  add_common(simulate);

  std::vector<std::size_t> levels;
  std::size_t reference = 0;
  std::string mode = "coupled";
  auto* convergence = app.add_subcommand("convergence", "Self-convergence study");
  convergence->add_option("scenario", scenario_path, "Scenario file")->required();
  convergence->add_option("--levels", levels, "Spatial cell counts, coarse to fine")
      ->required()
      ->delimiter(',');
  convergence->add_option("--reference", reference, "Cell count of the reference run")
      ->required();
  convergence->add_option("--mode", mode, "coupled (dt = dx) or space (dt fixed)")
      ->check(CLI::IsMember({"coupled", "space"}));
  add_common(convergence);

  std::vector<double> kappas;
  auto* sweep = app.add_subcommand("sweep", "Run one scenario over several Knudsen numbers");
  sweep->add_option("scenario", scenario_path, "Scenario file")->required();
  sweep->add_option("--kappa", kappas, "Knudsen numbers")->required()->delimiter(',');
  add_common(sweep);

  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    if (*simulate) {
      const auto scenario = load(scenario_path, out);
      const auto result = polykin::cmd_simulate(scenario);
      print_warnings(result.warnings);
      const auto& last = result.run.reports.back();
      std::cout << "steps: " << last.step << "  time: " << last.time
                << "  mass: " << last.conserved.mass << "  energy: " << last.conserved.energy
                << "  norm_q: " << last.norm_q << '\n';
      for (const auto& path : result.written) std::cout << "wrote " << path.string() << '\n';
      if (!result.all_finite()) {
        std::cerr << "error: non-finite step report\n";
        return kExitCheckFailed;
      }
      if (result.envelope) {
        const auto& env = *result.envelope;
        std::cout << "envelope: " << env.lower_violations << " lower and "
                  << env.upper_violations << " upper violations over " << env.steps_checked
                  << " steps\n";
        if (!env.ok()) {
          try {
            env.require();
          } catch (const polykin::Error& e) {
            std::cerr << "error: " << e.what() << '\n';
          }
          return kExitCheckFailed;
        }
      }
    } else if (*convergence) {
      const auto scenario = load(scenario_path, out);
      const auto mode_value = mode == "space" ? polykin::RefinementMode::Space
                                              : polykin::RefinementMode::Coupled;
      const auto result = polykin::cmd_convergence(scenario, levels, reference, mode_value);
      result.table.write_markdown(std::cout);
      for (const auto& path : result.written) std::cout << "wrote " << path.string() << '\n';
    } else if (*sweep) {
      const auto scenario = load(scenario_path, out);
      const auto result = polykin::cmd_stiffness_sweep(scenario, kappas);
      polykin::write_sweep_csv(std::cout, result.rows);
      for (const auto& path : result.written) std::cout << "wrote " << path.string() << '\n';
      for (const auto& row : result.rows)
        if (!row.bounded) return kExitCheckFailed;
    }
  } catch (const polykin::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}

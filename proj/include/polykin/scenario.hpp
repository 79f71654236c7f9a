#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polykin/diagnostics.hpp"
#include "polykin/field.hpp"
#include "polykin/grid.hpp"
#include "polykin/params.hpp"
#include "polykin/stepper.hpp"
#include "polykin/types.hpp"

namespace polykin {

/// Uniform Maxwellian with density rho, bulk velocity u, temperature T.
struct MaxwellianInit {
  double rho = 1.0;
  Vec3 u = Vec3::Zero();
  double temperature = 1.0;
};

/// Local Maxwellian with density rho0 (1 + alpha sin 2 pi x).
struct SmoothPerturbationInit {
  double rho0 = 1.0;
  double alpha = 0.2;
  Vec3 u = Vec3::Zero();
  double temperature = 1.0;
};

/// Left state on [0, 1/2), right state on [1/2, 1), periodic. The jumps
/// at x = 0 and x = 1/2 are smoothed with tanh profiles of width
/// smoothing_cells * dx unless `sharp` is set.
struct RiemannInit {
  MaxwellianInit left{1.0, Vec3::Zero(), 1.0};
  MaxwellianInit right{0.125, Vec3::Zero(), 0.8};
  double smoothing_cells = 2.0;
  bool sharp = false;
};

using InitialCondition = std::variant<MaxwellianInit, SmoothPerturbationInit, RiemannInit>;

struct Scenario {
  GridConfig grid;
  SchemeParams params;
  double dt = 0.01;
  double t_final = 0.1;
  double t_ref = 1.0; ///< Reference temperature used for the default truncations.
  InitialCondition initial = MaxwellianInit{};
  std::optional<StabilityEnvelope> envelope;
  /// Replace envelope->c01 by the largest certified value (halved) for the
  /// sampled initial data (`envelope.c01 = auto`).
  bool envelope_fit_c01 = false;
  bool relaxation = true;
  std::filesystem::path out_dir;
  std::vector<double> snapshot_times;

  /// T^f / dt; the scenario must have been validated.
  std::size_t step_count() const;
  /// Step index of each snapshot time.
  std::vector<std::size_t> snapshot_steps() const;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

/// Reads `key = value` lines; `#` starts a comment. Unset truncations
/// default to v_max = 8 sqrt(t_ref), i_max = (30 t_ref)^{delta/2} and
/// q = 6 + delta. Throws ParseError (with line) on unknown keys, repeated
/// keys or malformed values, ValidationError on out-of-range values.
Scenario parse_scenario_text(std::string_view text);
Scenario parse_scenario(const std::filesystem::path& path);

/// Inverse of parse_scenario_text for every field it understands.
std::string format_scenario(const Scenario& scenario);

/// Evaluates the initial condition; the energy factor uses the discrete
/// normalizer of `grid`, so a uniform Maxwellian at T = 1 has the requested
/// mass to quadrature accuracy in v.
InitialFunction make_initial_function(const Scenario& scenario, const PhaseGrid& grid);

/// Grid, parameters and initial data of the scenario, ready for `run`.
RunConfig make_run_config(const Scenario& scenario);

} // namespace polykin

// Acceptance suite. Run with no arguments for every criterion or with a list
// of criterion numbers. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polykin/commands.hpp"
#include "polykin/convergence.hpp"
#include "polykin/diagnostics.hpp"
#include "polykin/errors.hpp"
#include "polykin/gaussian.hpp"
#include "polykin/moments.hpp"
#include "polykin/scenario.hpp"
#include "polykin/stepper.hpp"
#include "polykin/transport.hpp"
#include "support.hpp"

using namespace polykin;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string fix(double x, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. Positivity and max-norm non-expansion over random fields.
Outcome positivity() {
  const auto start = std::chrono::steady_clock::now();
  const auto g = build_grid({8, 5, 2.0, 4, 4.0, 2.0});
  const double nus[] = {-0.25, 0.0, 0.5, 0.9};
  const double thetas[] = {0.25, 0.5, 1.0};
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::size_t negative = 0, expanded = 0, fields = 0;
  for (int n = 0; n < 1000; ++n) {
    SchemeParams p;
    p.nu = nus[n % 4];
    p.theta = thetas[(n / 4) % 3];
    p.kappa = std::pow(10.0, -4.0 + 5.0 * u01(rng));
    const double dt = 0.01 + 0.3 * u01(rng);
    DistField f(g);
    // Sparse random support on top of a uniform random background.
    const double zero_fraction = 0.5 * u01(rng);
    for (double& x : f.values()) x = u01(rng) < zero_fraction ? 0.0 : u01(rng);
    const DistField ft = advect(f, dt);
    if (weighted_sup_norm(ft, p.q) > weighted_sup_norm(f, p.q)) ++expanded;
    const auto [out, report] = step(f, p, dt);
    negative += static_cast<std::size_t>(
        std::count_if(out.values().begin(), out.values().end(), [](double x) { return !(x >= 0.0); }));
    ++fields;
  }
  const double secs = seconds_since(start);
  return {negative == 0 && expanded == 0 && secs < 60.0,
          std::to_string(fields) + " fields, " + std::to_string(negative) + " negative nodes, " +
              std::to_string(expanded) + " norm expansions, " + fix(secs, 1) + " s"};
}

// 2. Temperature tensor sandwich on random anisotropic cells.
Outcome sandwich() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> n01;
  std::size_t violations = 0, temperature_failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int n = 0; n < 1000; ++n) {
    SchemeParams p;
    p.nu = -0.5 + 1.5 * u01(rng);
    if (p.nu <= -0.5) p.nu = -0.499;
    p.theta = std::max(1e-3, u01(rng));
    p.delta = 0.5 + 1.5 * u01(rng);
    p.q = 6.0 + p.delta;
    p.kappa = std::pow(10.0, -3.0 + 4.0 * u01(rng));
    const double dt = 0.1 * u01(rng);

    // Stress tensor of an anisotropic gas: A A^T with a random A.
    Mat3 a;
    for (int k = 0; k < 9; ++k) a(k) = n01(rng);
    a *= 0.2 + 2.0 * u01(rng);
    MacroCell c;
    c.rho = 1.0;
    c.theta_tensor = a * a.transpose();
    c.t_tr = c.theta_tensor.trace() / 3.0;
    c.t_int = 0.05 + 3.0 * u01(rng);
    c.t_delta = (3.0 * c.t_tr + p.delta * c.t_int) / (3.0 + p.delta);
    c.t_theta = p.theta * c.t_delta + (1.0 - p.theta) * c.t_int;
    c.t_blend = blended_tensor(c.t_delta, c.t_tr, c.theta_tensor, p,
                               blend_factors(p.nu, p.theta, p.kappa, dt));
    const auto r = tensor_sandwich_check(c, p, dt, 100, 1000 + n);
    violations += r.violations;
    if (!r.relaxation_temperature_ok) ++temperature_failures;
    worst = std::min({worst, r.worst_lower_margin, r.worst_upper_margin});
  }
  return {violations == 0 && temperature_failures == 0,
          "1000 cells x 100 directions, " + std::to_string(violations) +
              " tensor violations, " + std::to_string(temperature_failures) +
              " relaxation-temperature violations, worst relative margin " + sci(worst)};
}

MacroCell moments_of_unit_gaussian(std::size_t n_v, std::size_t n_i) {
  const auto g = build_grid({2, n_v, 8.0, n_i, 40.0, 2.0});
  MacroCell c;
  c.rho = 1.0;
  c.t_tr = c.t_int = c.t_delta = c.t_theta = 1.0;
  c.theta_tensor = c.t_blend = Mat3::Identity();
  DistField f(g);
  const double lambda = normalizer_discrete(2.0, *g);
  for (std::size_t i = 0; i < 2; ++i) eval_gaussian_into(c, *g, lambda, f.cell(i));
  return compute_moments(f, SchemeParams{}, 0.0)[0];
}

// 3. Moments of the discrete Gaussian.
Outcome gaussian_moments() {
  const MacroCell fine = moments_of_unit_gaussian(33, 256);
  const MacroCell coarse = moments_of_unit_gaussian(17, 128);
  const double rho_err = std::abs(fine.rho - 1.0);
  const double u_err = fine.u.norm();
  const double t_err = std::abs(fine.t_delta - 1.0);
  const double defect_fine = rho_err + t_err;
  const double defect_coarse = std::abs(coarse.rho - 1.0) + std::abs(coarse.t_delta - 1.0);
  const double ratio = defect_coarse / defect_fine;
  const bool ok_rho = rho_err < 1e-6, ok_u = u_err < 1e-10, ok_t = t_err < 1e-5;
  const bool ok_ratio = ratio >= 1.5 && ratio <= 2.5;
  return {ok_rho && ok_u && ok_t && ok_ratio,
          "|rho-1| = " + sci(rho_err) + (ok_rho ? " ok" : " FAIL") + ", |U| = " + sci(u_err) +
              (ok_u ? " ok" : " FAIL") + ", |T_delta-1| = " + sci(t_err) +
              (ok_t ? " ok" : " FAIL (needs < 1e-5)") + ", defect ratio on halving = " +
              fix(ratio) + (ok_ratio ? " ok" : " FAIL")};
}

struct HomogeneousRun {
  double mass_drift = 0.0, momentum_drift = 0.0, energy_drift = 0.0;
  double worst_entropy_increase = 0.0;
  std::size_t entropy_increases = 0;
  double seconds = 0.0;
};

/// Uniform-in-x relaxation of an anisotropic two-temperature gas at the
/// resolution of criterion 3.
const HomogeneousRun& homogeneous_run() {
  static const HomogeneousRun result = [] {
    const auto start = std::chrono::steady_clock::now();
    const auto g = build_grid({2, 33, 8.0, 256, 40.0, 2.0});
    SchemeParams p;
    p.nu = 0.5;
    p.theta = 0.8;
    p.kappa = 1.0;
    const double lambda = normalizer_discrete(2.0, *g);
    const Vec3 t(1.3, 1.0, 0.7);
    const double t_int = 0.8;
    const Vec3 u(0.2, 0.0, 0.0);
    const InitialFunction f0 = [&](double, const Vec3& v, double e) {
      const Vec3 c = v - u;
      const double vel = std::exp(-0.5 * (c.array().square() / t.array()).sum()) /
                         std::sqrt(std::pow(2.0 * std::numbers::pi, 3) * t.prod());
      return vel * lambda / t_int * std::exp(-e / t_int);
    };
    Solver solver(g, p, 1e-2);
    solver.initialize(f0);
    const StepReport first = solver.current_report();
    HomogeneousRun r;
    double prev_entropy = first.entropy;
    StepReport last = first;
    for (int n = 0; n < 100; ++n) {
      last = solver.advance();
      const double increase = last.entropy - prev_entropy;
      if (increase > 1e-10) ++r.entropy_increases;
      r.worst_entropy_increase = std::max(r.worst_entropy_increase, increase);
      prev_entropy = last.entropy;
    }
    const double mom_scale = std::max(first.conserved.momentum.norm(), first.conserved.mass);
    r.mass_drift = std::abs(last.conserved.mass - first.conserved.mass) / first.conserved.mass;
    r.momentum_drift = (last.conserved.momentum - first.conserved.momentum).norm() / mom_scale;
    r.energy_drift = std::abs(last.conserved.energy - first.conserved.energy) / first.conserved.energy;
    r.seconds = seconds_since(start);
    return r;
  }();
  return result;
}

// 4. Conservation drift of homogeneous relaxation.
Outcome conservation() {
  const auto& r = homogeneous_run();
  const bool ok = r.mass_drift < 1e-6 && r.momentum_drift < 1e-6 && r.energy_drift < 1e-6 &&
                  r.seconds < 120.0;
  return {ok, "relative drift after 100 steps: mass " + sci(r.mass_drift) + ", momentum " +
                  sci(r.momentum_drift) + ", energy " + sci(r.energy_drift) + " (needs < 1e-6), " +
                  fix(r.seconds, 1) + " s"};
}

// 5. Entropy monotonicity on the same run.
Outcome entropy_monotone() {
  const auto& r = homogeneous_run();
  return {r.entropy_increases == 0,
          std::to_string(r.entropy_increases) + " steps with entropy increase > 1e-10, largest " +
              sci(r.worst_entropy_increase)};
}

Scenario smooth_scenario() {
  Scenario s;
  SmoothPerturbationInit init;
  init.rho0 = 1.0;
  init.alpha = 0.2;
  init.temperature = 1.0;
  s.initial = init;
  s.params.nu = 0.5;
  s.params.theta = 0.8;
  s.params.delta = 2.0;
  s.params.kappa = 1.0;
  s.params.q = 8.0;
  s.grid = {16, 17, 8.0, 16, 8.0, 2.0};
  s.t_ref = 1.0;
  return s;
}

std::string orders_text(const ConvergenceTable& table) {
  std::string text;
  for (const auto& row : table.rows) {
    text += row.level + ": " + sci(row.error);
    if (row.observed_order) text += " (order " + fix(*row.observed_order) + ")";
    text += "; ";
  }
  return text;
}

Outcome convergence_test(RefinementMode mode, double lo, double hi, double time_limit) {
  const auto start = std::chrono::steady_clock::now();
  Scenario s = smooth_scenario();
  s.t_final = 0.25;
  if (mode == RefinementMode::Space) {
    s.relaxation = false;
    s.dt = 1.0 / 48.0;
    s.grid.n_i = 1;
  } else {
    s.dt = 1.0 / 16.0;
  }
  const auto result = cmd_convergence(s, {16, 32, 64}, 256, mode);
  const auto orders = result.table.orders();
  const bool in_range =
      std::all_of(orders.begin(), orders.end(), [&](double o) { return o >= lo && o <= hi; });
  const double secs = seconds_since(start);
  return {in_range && secs < time_limit,
          orders_text(result.table) + "required [" + fix(lo, 2) + ", " + fix(hi, 2) + "], " +
              fix(secs, 1) + " s"};
}

// 6. First-order convergence with dt = dx refinement.
Outcome coupled_order() { return convergence_test(RefinementMode::Coupled, 0.75, 1.25, 600.0); }

// 7. Second-order interpolation error of pure transport at fixed dt.
Outcome transport_order() { return convergence_test(RefinementMode::Space, 1.75, 2.25, 600.0); }

// 8. Stability and equilibrium distance across Knudsen numbers.
Outcome stiff_sweep() {
  Scenario s = smooth_scenario();
  s.grid = {4, 17, 8.0, 768, 12.0, 2.0};
  s.dt = 1e-2;
  s.t_final = 1.0;
  const auto result = cmd_stiffness_sweep(s, {1.0, 1e-2, 1e-4, 1e-6});
  bool bounded = true, monotone = true;
  std::string text;
  for (std::size_t n = 0; n < result.rows.size(); ++n) {
    const auto& r = result.rows[n];
    bounded = bounded && r.bounded;
    if (n > 0) monotone = monotone && r.equilibrium_distance <= result.rows[n - 1].equilibrium_distance;
    text += "kappa " + sci(r.kappa) + ": distance " + sci(r.equilibrium_distance) +
            (r.bounded ? "" : " NOT FINITE") + "; ";
  }
  return {bounded && monotone, text + (monotone ? "monotone" : "not monotone")};
}

// 9. Stability envelopes over 200 steps.
Outcome envelopes() {
  Scenario s = smooth_scenario();
  s.dt = 1e-2;
  s.t_final = 2.0;
  s.envelope = StabilityEnvelope{1.0, 1.0, 2.0, 2.0};
  s.envelope_fit_c01 = true;
  const auto result = cmd_simulate(s);
  const auto& r = *result.envelope;
  return {r.ok() && r.steps_checked == 200 && result.all_finite(),
          std::to_string(r.steps_checked) + " steps, " + std::to_string(r.lower_violations) +
              " lower and " + std::to_string(r.upper_violations) +
              " upper violations, min lower ratio " + fix(r.min_lower_ratio) +
              ", final upper bound " + sci(r.upper_bound)};
}

struct Criterion {
  int number;
  const char* name;
  std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "positivity and max-norm non-expansion", positivity},
      {2, "temperature tensor sandwich", sandwich},
      {3, "discrete Gaussian moment consistency", gaussian_moments},
      {4, "conservation drift of homogeneous relaxation", conservation},
      {5, "entropy monotonicity of homogeneous relaxation", entropy_monotone},
      {6, "coupled dt = dx convergence order", coupled_order},
      {7, "transport-only spatial order", transport_order},
      {8, "stiff uniform stability", stiff_sweep},
      {9, "stability envelope monitors", envelopes},
  };

  std::vector<int> selected;
  for (int a = 1; a < argc; ++a) selected.push_back(std::atoi(argv[a]));
  if (selected.empty())
    for (const auto& c : criteria) selected.push_back(c.number);

  int failures = 0;
  for (int number : selected) {
    const auto it = std::find_if(criteria.begin(), criteria.end(),
                                 [&](const Criterion& c) { return c.number == number; });
    if (it == criteria.end()) {
      std::cerr << "unknown criterion " << number << '\n';
      return 2;
    }
    Outcome outcome;
    try {
      outcome = it->run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << it->number << " ("
              << it->name << "): " << outcome.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}

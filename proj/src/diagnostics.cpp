#include "polykin/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "polykin/errors.hpp"
#include "polykin/gaussian.hpp"
#include "polykin/moments.hpp"
#include "polykin/summation.hpp"

namespace polykin {

ConservedQuantities conserved_quantities(const DistField& field) {
  const PhaseGrid& g = field.grid();
  const std::size_t nv3 = g.velocity_count();
  const std::size_t ni = g.n_i();
  const auto eps = g.energy_map_nodes();

  // Per-cell partial sums (mass, 3 momentum, energy), reduced pairwise.
  std::vector<std::array<double, 5>> partial(g.n_x());
  detail::parallel_for(g.n_x(), [&](std::size_t i) {
    const auto block = field.cell(i);
    std::vector<double> mass(nv3), internal(nv3);
    for (std::size_t j = 0; j < nv3; ++j) {
      const double* f = block.data() + j * ni;
      mass[j] = pairwise_sum(0, ni, [f](std::size_t k) { return f[k]; });
      internal[j] = pairwise_sum(0, ni, [f, eps](std::size_t k) { return f[k] * eps[k]; });
    }
    auto& p = partial[i];
    p[0] = pairwise_sum(mass);
    for (int a = 0; a < 3; ++a)
      p[1 + a] =
          pairwise_sum(0, nv3, [&](std::size_t j) { return mass[j] * g.velocity(j)[a]; });
    p[4] = pairwise_sum(0, nv3, [&](std::size_t j) {
      return 0.5 * mass[j] * g.speed_squared(j) + internal[j];
    });
  });

  const double w = g.node_weight();
  auto total = [&](int c) {
    return w * pairwise_sum(0, partial.size(), [&](std::size_t i) { return partial[i][c]; });
  };
  ConservedQuantities q;
  q.mass = total(0);
  q.momentum = Vec3(total(1), total(2), total(3));
  q.energy = total(4);
  return q;
}

double entropy(const DistField& field) {
  const PhaseGrid& g = field.grid();
  std::vector<double> partial(g.n_x());
  detail::parallel_for(g.n_x(), [&](std::size_t i) {
    const auto block = field.cell(i);
    for (double f : block)
      if (!(f >= 0.0)) throw NegativeField("entropy of a negative or non-finite field", i);
    partial[i] = pairwise_sum(0, block.size(), [&](std::size_t n) {
      const double f = block[n];
      return f > 0.0 ? f * std::log(f) : 0.0;
    });
  });
  return g.node_weight() * pairwise_sum(partial);
}

double equilibrium_distance(const DistField& field, const SchemeParams& params) {
  const PhaseGrid& g = field.grid();
  const MacroFields macro = compute_moments(field, params, 0.0);
  const double lambda_delta = normalizer_discrete(params.delta, g);
  const auto weights = g.norm_weights(params.q);
  std::vector<double> per_cell(g.n_x());
  detail::parallel_for(g.n_x(), [&](std::size_t i) {
    std::vector<double> m(g.cell_size());
    try {
      eval_gaussian_into(macro[i], g, lambda_delta, m);
    } catch (CellError& e) {
      e.locate(i);
      throw;
    }
    const auto f = field.cell(i);
    double sup = 0.0;
    for (std::size_t n = 0; n < m.size(); ++n)
      sup = std::max(sup, std::abs(f[n] - m[n]) * (*weights)[n]);
    per_cell[i] = sup;
  });
  return *std::max_element(per_cell.begin(), per_cell.end());
}

double StabilityEnvelope::operator()(const Vec3& v, double energy) const {
  return c01 * std::exp(-c02 * (std::pow(v.norm(), a_exp) + std::pow(energy, b_exp)));
}

void StabilityEnvelope::validate() const {
  if (!(c01 > 0.0 && c02 > 0.0 && a_exp > 0.0 && b_exp > 0.0))
    throw OutOfRange("envelope parameters must all be positive");
}

StabilityEnvelope fit_envelope(const DistField& sampled, double c02, double a_exp, double b_exp,
                               double safety) {
  StabilityEnvelope shape{1.0, c02, a_exp, b_exp};
  shape.validate();
  const PhaseGrid& g = sampled.grid();
  double ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.n_x(); ++i)
    for (std::size_t j = 0; j < g.velocity_count(); ++j)
      for (std::size_t k = 0; k < g.n_i(); ++k)
        ratio = std::min(ratio, sampled(i, j, k) / shape(g.velocity(j), g.energy(k)));
  if (!(ratio > 0.0) || !std::isfinite(ratio))
    throw OutOfRange("initial data does not dominate a positive envelope");
  shape.c01 = safety * ratio;
  return shape;
}

void EnvelopeReport::require() const {
  if (ok()) return;
  std::ostringstream msg;
  msg << "stability envelope violated";
  if (first_violation) {
    const auto& v = *first_violation;
    msg << " at step " << v.step << " ("
        << (v.kind == EnvelopeViolation::Kind::Lower ? "lower" : "upper") << " bound";
    if (v.kind == EnvelopeViolation::Kind::Lower)
      msg << ", node " << v.i << "," << v.j << "," << v.k;
    msg << "): value " << v.value << " vs bound " << v.bound;
  }
  throw EnvelopeViolated(msg.str());
}

EnvelopeMonitor::EnvelopeMonitor(StabilityEnvelope envelope, double q, double relax_weight,
                                 double relative_slack)
    : envelope_(envelope), q_(q), relax_weight_(relax_weight), slack_(relative_slack) {
  envelope_.validate();
  if (!(relax_weight >= 0.0 && relax_weight <= 1.0))
    throw OutOfRange("relaxation weight must lie in [0, 1]");
  report_.decay_factor = 1.0 - relax_weight;
  report_.min_lower_ratio = std::numeric_limits<double>::infinity();
}

void EnvelopeMonitor::observe(std::size_t step, const DistField& f_tilde, const StepNorms& norms) {
  const PhaseGrid& g = f_tilde.grid();
  if (shape_.size() != g.cell_size()) {
    shape_.resize(g.cell_size());
    for (std::size_t j = 0; j < g.velocity_count(); ++j)
      for (std::size_t k = 0; k < g.n_i(); ++k)
        shape_[j * g.n_i() + k] = envelope_(g.velocity(j), g.energy(k));
  }
  if (!started_) {
    bound_ = std::max(norms.f, norms.f_tilde);
    started_ = true;
  }

  auto record = [&](EnvelopeViolation v) {
    if (!report_.first_violation) report_.first_violation = v;
  };

  // Lower envelope B^n.
  const double scale = std::pow(report_.decay_factor, static_cast<double>(step));
  for (std::size_t i = 0; i < g.n_x(); ++i) {
    const auto block = f_tilde.cell(i);
    for (std::size_t n = 0; n < block.size(); ++n) {
      const double bound = scale * shape_[n];
      const double ratio = block[n] / bound;
      report_.min_lower_ratio = std::min(report_.min_lower_ratio, ratio);
      if (ratio < 1.0 - slack_) {
        ++report_.lower_violations;
        record({step, EnvelopeViolation::Kind::Lower, i, n / g.n_i(), n % g.n_i(), block[n], bound});
      }
    }
  }

  // Upper envelope A^n with the measured growth factor.
  const double measured = weighted_sup_norm(f_tilde, q_);
  if (!(measured <= bound_ * (1.0 + slack_))) {
    ++report_.upper_violations;
    record({step, EnvelopeViolation::Kind::Upper, 0, 0, 0, measured, bound_});
  }
  const double reference = step == 0 ? std::max(norms.f, norms.f_tilde) : norms.f;
  const double ratio = reference > 0.0 ? norms.gaussian / reference : 0.0;
  report_.growth_factor = (1.0 - relax_weight_) + relax_weight_ * ratio;
  bound_ *= report_.growth_factor;
  report_.upper_bound = bound_;
  ++report_.steps_checked;
}

EnvelopeReport check_envelopes(const std::vector<TrajectoryEntry>& trajectory,
                               const StabilityEnvelope& envelope, double q, double relax_weight) {
  EnvelopeMonitor monitor(envelope, q, relax_weight);
  for (std::size_t n = 0; n < trajectory.size(); ++n)
    monitor.observe(n, trajectory[n].f_tilde, trajectory[n].norms);
  return monitor.report();
}

} // namespace polykin

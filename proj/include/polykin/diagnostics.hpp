#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polykin/field.hpp"
#include "polykin/params.hpp"
#include "polykin/types.hpp"

namespace polykin {

/// Totals of the collision invariants (1, v, |v|^2/2 + I^{2/delta}).
struct ConservedQuantities {
  double mass = 0.0;
  Vec3 momentum = Vec3::Zero();
  double energy = 0.0;
};

ConservedQuantities conserved_quantities(const DistField& field);

/// sum f ln f dx dv^3 dI with 0 ln 0 = 0. Throws NegativeField.
double entropy(const DistField& field);

/// || f - M(f) ||_q where M uses the continuous-model temperature tensor
/// (blend factors at dt = 0).
double equilibrium_distance(const DistField& field, const SchemeParams& params);

/// Lower envelope C01 exp(-C02 (|v|^a + I^b)) certified by the initial data.
struct StabilityEnvelope {
  double c01 = 1.0;
  double c02 = 1.0;
  double a_exp = 2.0;
  double b_exp = 2.0;

  double operator()(const Vec3& v, double energy) const;
  void validate() const;
};

/// Largest C01 (times `safety`) for which the sampled field dominates the
/// envelope shape exp(-C02 (|v|^a + I^b)) at every node.
StabilityEnvelope fit_envelope(const DistField& sampled, double c02, double a_exp, double b_exp,
                               double safety = 0.5);

/// Norms measured by the stepper during one step n.
struct StepNorms {
  double f = 0.0;        ///< ||f^n||_q before the step.
  double f_tilde = 0.0;  ///< ||f~^n||_q after advection.
  double gaussian = 0.0; ///< ||M(f~^n)||_q.
};

struct EnvelopeViolation {
  std::size_t step = 0;
  enum class Kind { Lower, Upper } kind = Kind::Lower;
  std::size_t i = 0, j = 0, k = 0; ///< Node of a lower-bound violation.
  double value = 0.0;
  double bound = 0.0;
};

struct EnvelopeReport {
  std::size_t steps_checked = 0;
  std::size_t lower_violations = 0;
  std::size_t upper_violations = 0;
  std::optional<EnvelopeViolation> first_violation;
  double decay_factor = 1.0;   ///< kappa / (kappa + A dt).
  double growth_factor = 1.0;  ///< Last measured (kappa + A dt C) / (kappa + A dt).
  double upper_bound = 0.0;    ///< Current cumulative upper bound on ||f~^n||_q.
  double min_lower_ratio = 0.0; ///< min over steps and nodes of f~ / lower bound.

  bool ok() const { return lower_violations == 0 && upper_violations == 0; }
  /// Throws EnvelopeViolated describing the first violation.
  void require() const;
};

/// Streaming monitor of the per-step stability envelopes:
///   lower: f~^n >= decay^n C01 exp(-C02(|v_j|^a + I_k^b)) at every node,
///   upper: ||f~^n||_q <= prod_{m<n} g_m R_0 with the measured growth
///          g_m = (kappa + A dt ||M(f~^m)||_q / R_m) / (kappa + A dt),
/// where R_m = ||f^m||_q for m >= 1 and R_0 = max(||f^0||_q, ||f~^0||_q)
/// stands in for the sup of the continuous initial data.
class EnvelopeMonitor {
public:
  /// `relax_weight` is A dt / (kappa + A dt); zero for pure transport.
  EnvelopeMonitor(StabilityEnvelope envelope, double q, double relax_weight,
                  double relative_slack = 1e-12);

  void observe(std::size_t step, const DistField& f_tilde, const StepNorms& norms);

  const EnvelopeReport& report() const { return report_; }

private:
  StabilityEnvelope envelope_;
  double q_;
  double relax_weight_;
  double slack_;
  double bound_ = 0.0;
  bool started_ = false;
  std::vector<double> shape_; // envelope at each (j, k) of the last grid seen
  EnvelopeReport report_;
};

/// One recorded step of a trajectory: the advected field and the norms.
struct TrajectoryEntry {
  DistField f_tilde;
  StepNorms norms;
};

EnvelopeReport check_envelopes(const std::vector<TrajectoryEntry>& trajectory,
                               const StabilityEnvelope& envelope, double q, double relax_weight);

} // namespace polykin

#pragma once

#include <span>
#include <vector>

#include "spheredyn/options.hpp"
#include "spheredyn/quadratic_model.hpp"
#include "spheredyn/sphere.hpp"

namespace spheredyn {

/// Action of the inverse inertia blocks m^I_ij(q) on stacked momenta.
///
/// The blocks are never formed: apply() solves the symmetric forward
/// Legendre operator. For mu momenta the operator has off-diagonal blocks
/// m_ij P_i P_j (equal to the Legendre map on tangent velocities); for pi
/// momenta it is m_ij S(q_i)^T S(q_j). Both have diagonal blocks m_ii I.
class InverseInertia {
 public:
  /// `rep` must be MomentumMu or MomentumPi. The model must outlive this object.
  InverseInertia(const QuadraticModel& model, Representation rep);

  std::vector<Vec3> apply(Configuration q, std::span<const Vec3> momenta) const;

  /// 1/2 p . m^I(q) p, evaluated at ambient (possibly non-unit) q.
  double kinetic(Configuration q, std::span<const Vec3> momenta) const;

 private:
  const QuadraticModel* model_;
  Representation rep_;
};

/// mu_i = m_ii qd_i + P_i sum_{j!=i} m_ij qd_j.
SystemState legendre_mu(const QuadraticModel& model, const SystemState& velocity_state);
/// qd_i = P_i sum_j m^I_ij mu_j.
SystemState inverse_legendre_mu(const QuadraticModel& model, const SystemState& mu_state);

/// pi_i = m_ii w_i + sum_{j!=i} S(q_i)^T m_ij S(q_j) w_j.
SystemState legendre_pi(const QuadraticModel& model, const SystemState& omega_state);
/// w_i = sum_j m^I_ij pi_j.
SystemState inverse_legendre_pi(const QuadraticModel& model, const SystemState& pi_state);

/// H(q, mu) = 1/2 sum mu_j . m^I_jk mu_k + U(q).
double hamiltonian_mu(const QuadraticModel& model, const SystemState& mu_state);
/// H(q, pi) = 1/2 sum pi_j . m^I_jk pi_k + U(q).
double hamiltonian_pi(const QuadraticModel& model, const SystemState& pi_state);

/// Converts a state to any representation through the kinematic and
/// Legendre maps (all routes pass through the Omega representation).
SystemState convert_state(const QuadraticModel& model, const SystemState& state, Representation target);

/// Total energy of a state in any representation.
double total_energy(const QuadraticModel& model, const SystemState& state);

/// Gradient of H with respect to the ambient q_i, momenta held fixed as raw
/// 3-vectors. Not projected; callers apply the projections of the equations.
/// `step` is the central-difference step for the finite-difference path.
Vec3 dH_dq(const QuadraticModel& model, const SystemState& momentum_state, std::size_t i,
           GradientMethod method = GradientMethod::FiniteDifference, double step = 1e-6);

struct PhaseRates {
  std::vector<Vec3> qdot;
  /// mudot or pidot depending on the state's representation.
  std::vector<Vec3> pdot;
};

/// Hamilton's equations in (q, mu):
///   qd_i  = P_i dH/dmu_i
///   mud_i = -P_i (dH/dq_i - f_i) + dH/dmu_i x (mu_i x q_i).
PhaseRates ham_rhs_mu(const QuadraticModel& model, const ForceModel& forces,
                      const SystemState& mu_state, const EvalOptions& options = {});

/// Hamilton's equations in (q, pi):
///   qd_i  = -S(q_i) dH/dpi_i
///   pid_i = -S(q_i) dH/dq_i + dH/dpi_i x pi_i + S(q_i) f_i.
PhaseRates ham_rhs_pi(const QuadraticModel& model, const ForceModel& forces,
                      const SystemState& pi_state, const EvalOptions& options = {});

}  // namespace spheredyn

#pragma once

#include <vector>

#include "spheredyn/options.hpp"
#include "spheredyn/quadratic_model.hpp"
#include "spheredyn/sphere.hpp"

namespace spheredyn {

struct AccelerationResult {
  /// qddot_i for the (q, qdot) form, omegadot_i for the (q, omega) form.
  std::vector<Vec3> second;
  /// Reciprocal condition estimate of the solved block system.
  double conditioning = 0.0;
};

/// Accelerations of the Euler-Lagrange equations in (q, qdot):
///   m_ii qdd_i + P_i sum_{j!=i} m_ij qdd_j + m_ii |qd_i|^2 q_i
///     + P_i (F_i + dU/dq_i - f_i) = 0,   P_i = I - q_i q_i^T.
/// The normal component of the solution satisfies q_i . qdd_i = -|qd_i|^2.
AccelerationResult el_accel_qdot(const QuadraticModel& model, const ForceModel& forces,
                                 const SystemState& state, const EvalOptions& options = {});

/// Angular accelerations of the Euler-Lagrange equations in (q, omega):
///   m_ii wd_i + sum_{j!=i} S(q_i)^T m_ij S(q_j) wd_j - sum_j m_ij |w_j|^2 S(q_i) q_j
///     + S(q_i)(F_i + dU/dq_i - f_i) = 0.
/// Each returned wd_i is orthogonal to q_i.
AccelerationResult el_accel_omega(const QuadraticModel& model, const ForceModel& forces,
                                  const SystemState& state, const EvalOptions& options = {});

/// Configuration-derivative force terms
///   F_i = sum_j mdot_ij qd_j - 1/2 d/dq_i sum_jk qd_j . m_jk qd_k,
/// with mdot_ij = sum_k (dm_ij/dq_k) . qd_k. The omega variant evaluates the
/// same expression with qd_j = w_j x q_j.
std::vector<Vec3> eval_F_qdot(const QuadraticModel& model, const SystemState& state);
std::vector<Vec3> eval_F_omega(const QuadraticModel& model, const SystemState& state);

struct LagrangianValue {
  double kinetic = 0.0;
  double potential = 0.0;
  double value() const { return kinetic - potential; }
  double energy() const { return kinetic + potential; }
};

/// L = T - U for a state in Velocity or Omega representation.
LagrangianValue lagrangian_value(const QuadraticModel& model, const SystemState& state);

/// Velocities qd_i from a state in Velocity or Omega representation.
std::vector<Vec3> velocities_of(const SystemState& state);

/// Converts between the Velocity and Omega representations.
SystemState to_omega(const SystemState& state);
SystemState to_velocity(const SystemState& state);

}  // namespace spheredyn

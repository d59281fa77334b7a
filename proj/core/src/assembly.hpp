#pragma once

// Block-operator assembly shared by the Lagrangian and Hamiltonian
// evaluators. Every operator is 3n x 3n with 3x3 blocks indexed by sphere.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "spheredyn/so3.hpp"

namespace spheredyn::detail {

/// Reciprocal condition estimate below which a block operator is singular.
inline constexpr double kMinReciprocalCondition = 1e-14;

Eigen::VectorXd stack(std::span<const Vec3> v);
std::vector<Vec3> unstack(const Eigen::VectorXd& x);

/// Left-hand operator of the (q, qdot) Euler-Lagrange equations:
/// diagonal blocks m_ii I, off-diagonal blocks m_ij (I - q_i q_i^T).
Eigen::MatrixXd qdot_el_operator(const Eigen::MatrixXd& m, std::span<const Vec3> q);

/// Symmetric operator that maps tangent velocities to mu momenta:
/// diagonal blocks m_ii I, off-diagonal blocks m_ij P_i P_j with
/// P_i = I - q_i q_i^T. Agrees with the mu Legendre map on tangent vectors
/// and sends normal directions to themselves scaled by m_ii.
Eigen::MatrixXd velocity_metric(const Eigen::MatrixXd& m, std::span<const Vec3> q);

/// Symmetric operator that maps angular velocities to pi momenta:
/// diagonal blocks m_ii I, off-diagonal blocks m_ij S(q_i)^T S(q_j).
Eigen::MatrixXd omega_metric(const Eigen::MatrixXd& m, std::span<const Vec3> q);

struct Solution {
  Eigen::VectorXd x;
  double rcond;
};

/// Pivoted LU solve. Throws SingularInertia when the reciprocal condition
/// estimate is below kMinReciprocalCondition.
Solution solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace spheredyn::detail

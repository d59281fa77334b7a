#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "spheredyn/quadratic_model.hpp"

namespace spheredyn {

/// Serial chain of massless rods joined by spherical joints, with a point
/// mass at the outboard end of each rod. The third inertial axis points up.
struct ChainPendulumParams {
  std::vector<double> masses;   // kg, all > 0
  std::vector<double> lengths;  // m, all > 0
  double gravity = 9.81;        // m/s^2, >= 0

  std::size_t size() const { return masses.size(); }
  /// Throws InvalidParams on mismatched sizes or non-positive values.
  void validate() const;
};

/// Time-dependent joint torque and tip disturbance; empty means zero.
struct ChainForceParams {
  std::function<Vec3(double)> tau;  // N m, at the base joint
  std::function<Vec3(double)> d;    // N, at the tip of the last link
};

/// M_ij = sum_{k >= max(i, j)} m_k.
Eigen::MatrixXd chain_inertia_constants(const std::vector<double>& masses);

/// m_ij = M_ij l_i l_j (constant), U = sum_i (sum_{j >= i} m_j) g l_i e3 . q_i.
QuadraticModel chain_pendulum(const ChainPendulumParams& params);

/// Chain pendulum with n = 1.
QuadraticModel spherical_pendulum(double mass, double length, double gravity);

/// f_1 = tau + l_1 S(q_1) d and f_j = l_j S(q_j) d for j >= 2.
ForceModel chain_forces(const ChainForceParams& params, const std::vector<double>& lengths);

/// x_i = sum_{j <= i} l_j q_j.
std::vector<Vec3> tip_positions(const ChainPendulumParams& params, Configuration q);

}  // namespace spheredyn

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "spheredyn/sphere.hpp"

namespace spheredyn {

using Configuration = std::span<const Vec3>;

/// n x n grid of 3-vectors; entry (j, k) holds d m_jk / d q_i for a fixed i.
class InertiaGradient {
 public:
  explicit InertiaGradient(std::size_t n) : n_(n), entries_(n * n, Vec3::Zero()) {}

  std::size_t size() const { return n_; }
  Vec3& operator()(std::size_t j, std::size_t k) { return entries_[j * n_ + k]; }
  const Vec3& operator()(std::size_t j, std::size_t k) const { return entries_[j * n_ + k]; }

 private:
  std::size_t n_;
  std::vector<Vec3> entries_;
};

/// Lagrangian with kinetic energy quadratic in the velocities:
///   L = 1/2 sum_jk m_jk(q) qdot_j . qdot_k - U(q).
///
/// Derivative callbacks are optional. Missing ones are replaced by central
/// differences (step 1e-6 * max(1, ||q_i||)) projected onto the tangent
/// plane at q_i. Callbacks receive ambient (possibly non-unit) points and
/// must stay smooth there. Instances are immutable after construction.
class QuadraticModel {
 public:
  using InertiaFn = std::function<Eigen::MatrixXd(Configuration)>;
  using InertiaGradFn = std::function<InertiaGradient(Configuration, std::size_t)>;
  using PotentialFn = std::function<double(Configuration)>;
  using PotentialGradFn = std::function<Vec3(Configuration, std::size_t)>;

  /// Throws InvalidParams for n == 0 or empty callbacks.
  QuadraticModel(std::size_t n, InertiaFn inertia, PotentialFn potential,
                 InertiaGradFn inertia_grad = {}, PotentialGradFn potential_grad = {});

  std::size_t size() const { return n_; }

  Eigen::MatrixXd inertia(Configuration q) const;
  InertiaGradient inertia_grad(Configuration q, std::size_t i) const;
  double potential(Configuration q) const;
  Vec3 potential_grad(Configuration q, std::size_t i) const;

  bool has_analytic_inertia_grad() const { return static_cast<bool>(inertia_grad_); }
  bool has_analytic_potential_grad() const { return static_cast<bool>(potential_grad_); }

  /// Same model with analytic derivatives dropped, forcing the
  /// finite-difference fallback.
  QuadraticModel without_analytic_derivatives() const;

  /// True when m_ii > 0 and the kinetic form is positive-definite on the
  /// tangent space at q (Cholesky on the regularized block operator).
  bool kinetic_form_positive_definite(Configuration q) const;

 private:
  std::size_t n_;
  InertiaFn inertia_;
  PotentialFn potential_;
  InertiaGradFn inertia_grad_;
  PotentialGradFn potential_grad_;
};

/// Generalized forces f_i(t, state), one 3-vector per sphere.
class ForceModel {
 public:
  using Fn = std::function<std::vector<Vec3>(double, const SystemState&)>;

  /// Identically zero forces.
  ForceModel() = default;
  explicit ForceModel(Fn fn) : fn_(std::move(fn)) {}

  std::vector<Vec3> operator()(double t, const SystemState& state) const;
  bool is_zero() const { return !fn_; }

 private:
  Fn fn_;
};

/// Finite-difference step used for configuration derivatives.
inline double fd_step(const Vec3& q) { return 1e-6 * std::max(1.0, q.norm()); }

}  // namespace spheredyn

#pragma once

#include "spheredyn/sphere.hpp"

namespace spheredyn {

/// How d/dq_i of the momentum kinetic energy is evaluated.
enum class GradientMethod {
  /// Central differences of H in q_i with momenta held fixed. Roundoff in
  /// the differenced quotient floors at ~1e-10, which masks RK4 convergence
  /// below h ~ 1e-3; kept as an independent cross-check of Analytic.
  FiniteDifference,
  /// Closed form -1/2 v^T (dA/dq_i) v with v = A^{-1} p (default).
  Analytic,
};

/// Controls the precondition check of the evaluators. Integrators evaluate
/// intermediate stages with checking disabled because stage states sit off
/// the manifold by O(h^2).
struct EvalOptions {
  bool check_state = true;
  double tolerance = kUnitNormTolerance;
  GradientMethod gradient = GradientMethod::Analytic;
};

}  // namespace spheredyn

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "spheredyn/so3.hpp"

namespace spheredyn {

/// Allowed | ||q|| - 1 | for a point on S^2.
inline constexpr double kUnitNormTolerance = 1e-9;
/// Allowed |q . v| / max(1, ||v||) for a vector tangent at q.
inline constexpr double kTangencyTolerance = 1e-9;
/// Tolerance used when checking kernel identities (projections, hat algebra).
inline constexpr double kKernelTolerance = 1e-12;

/// A unit vector in R^3.
class SpherePoint {
 public:
  /// Rejects inputs whose norm differs from one by more than `tolerance`.
  static SpherePoint checked(const Vec3& q, double tolerance = kUnitNormTolerance);
  /// Renormalizes `q`; throws TangencyViolation for a zero or non-finite vector.
  static SpherePoint repaired(const Vec3& q);

  const Vec3& vec() const { return q_; }
  operator const Vec3&() const { return q_; }

 private:
  explicit SpherePoint(const Vec3& q) : q_(q) {}
  Vec3 q_;
};

/// A vector orthogonal to its base point. Houses velocities, angular
/// velocities and momenta depending on the caller.
class TangentVector {
 public:
  static TangentVector checked(const SpherePoint& base, const Vec3& v,
                               double tolerance = kTangencyTolerance);
  /// Projects `v` onto the tangent plane at `base`.
  static TangentVector repaired(const SpherePoint& base, const Vec3& v);

  const SpherePoint& base() const { return base_; }
  const Vec3& vec() const { return v_; }

 private:
  TangentVector(const SpherePoint& base, const Vec3& v) : base_(base), v_(v) {}
  SpherePoint base_;
  Vec3 v_;
};

/// Which companion vector a SystemState carries next to each point.
enum class Representation { Velocity, Omega, MomentumMu, MomentumPi };

std::string_view to_string(Representation rep);

/// n points on S^2 plus one companion vector per point.
struct SystemState {
  Representation rep = Representation::Omega;
  double time = 0.0;
  std::vector<Vec3> points;
  std::vector<Vec3> companions;

  std::size_t size() const { return points.size(); }
};

/// Orthogonal projection (I - q q^T).
Mat3 tangent_projector(const Vec3& q);

TangentVector project_tangent(const SpherePoint& q, const Vec3& v);

/// omega = q x qdot. Throws TangencyViolation if qdot is not tangent at q.
TangentVector omega_from_qdot(const SpherePoint& q, const Vec3& qdot);

/// qdot = omega x q. Throws TangencyViolation if omega is not orthogonal to q.
TangentVector qdot_from_omega(const SpherePoint& q, const Vec3& omega);

/// exp(hat(a)) by Rodrigues' formula, Taylor fallback for ||a|| < 1e-8.
Mat3 rotation_exp(const Vec3& a);

/// exp(epsilon * hat(gamma)) * q, renormalized to unit length.
SpherePoint exp_rotate(const Vec3& gamma, double epsilon, const SpherePoint& q);

struct StateViolation {
  enum class Kind { UnitNorm, Tangency, Size, NonFinite };
  std::size_t index;  // zero-based link index
  std::size_t link() const { return index + 1; }
  Kind kind;
  double error;
};

/// Reports each index whose point or companion violates the invariants by
/// more than `tolerance`. An empty result means the state is valid.
std::vector<StateViolation> validate_state(const SystemState& state,
                                           double tolerance = kUnitNormTolerance);

/// Throws TangencyViolation describing the first violation, if any.
void require_valid(const SystemState& state, double tolerance = kUnitNormTolerance);

/// Renormalizes each point, then projects each companion onto the new
/// tangent plane.
void repair_state(SystemState& state);

}  // namespace spheredyn

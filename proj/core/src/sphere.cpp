#include "spheredyn/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spheredyn/errors.hpp"

namespace spheredyn {

namespace {

double tangency_error(const Vec3& q, const Vec3& v) {
  return std::abs(q.dot(v)) / std::max(1.0, v.norm());
}

}  // namespace

SpherePoint SpherePoint::checked(const Vec3& q, double tolerance) {
  const double err = std::abs(q.norm() - 1.0);
  if (!q.allFinite() || !(err <= tolerance)) {
    std::ostringstream msg;
    msg << "point is not on the unit sphere (| ||q|| - 1 | = " << err << ")";
    throw TangencyViolation(msg.str());
  }
  return SpherePoint(q);
}

SpherePoint SpherePoint::repaired(const Vec3& q) {
  const double norm = q.norm();
  if (!q.allFinite() || norm == 0.0) {
    throw TangencyViolation("cannot normalize a zero or non-finite vector onto S^2");
  }
  return SpherePoint(q / norm);
}

TangentVector TangentVector::checked(const SpherePoint& base, const Vec3& v, double tolerance) {
  const double err = tangency_error(base.vec(), v);
  if (!v.allFinite() || !(err <= tolerance)) {
    std::ostringstream msg;
    msg << "vector is not tangent to the sphere at its base point (|q.v| = " << err << ")";
    throw TangencyViolation(msg.str());
  }
  return TangentVector(base, v);
}

TangentVector TangentVector::repaired(const SpherePoint& base, const Vec3& v) {
  return TangentVector(base, tangent_projector(base.vec()) * v);
}

std::string_view to_string(Representation rep) {
  switch (rep) {
    case Representation::Velocity: return "qdot";
    case Representation::Omega: return "omega";
    case Representation::MomentumMu: return "mu";
    case Representation::MomentumPi: return "pi";
  }
  return "unknown";
}

Mat3 tangent_projector(const Vec3& q) { return Mat3::Identity() - q * q.transpose(); }

TangentVector project_tangent(const SpherePoint& q, const Vec3& v) {
  return TangentVector::repaired(q, v);
}

TangentVector omega_from_qdot(const SpherePoint& q, const Vec3& qdot) {
  const auto tangent = TangentVector::checked(q, qdot);
  return TangentVector::repaired(q, q.vec().cross(tangent.vec()));
}

TangentVector qdot_from_omega(const SpherePoint& q, const Vec3& omega) {
  const auto tangent = TangentVector::checked(q, omega);
  return TangentVector::repaired(q, tangent.vec().cross(q.vec()));
}

Mat3 rotation_exp(const Vec3& a) {
  const double angle = a.norm();
  const Mat3 k = hat(a);
  if (angle < 1e-8) {
    return Mat3::Identity() + k + 0.5 * k * k;
  }
  return Mat3::Identity() + (std::sin(angle) / angle) * k +
         ((1.0 - std::cos(angle)) / (angle * angle)) * k * k;
}

SpherePoint exp_rotate(const Vec3& gamma, double epsilon, const SpherePoint& q) {
  if (epsilon == 0.0 || gamma.isZero(0.0)) return q;
  return SpherePoint::repaired(rotation_exp(epsilon * gamma) * q.vec());
}

std::vector<StateViolation> validate_state(const SystemState& state, double tolerance) {
  std::vector<StateViolation> out;
  if (state.points.size() != state.companions.size()) {
    out.push_back({std::min(state.points.size(), state.companions.size()),
                   StateViolation::Kind::Size,
                   static_cast<double>(state.points.size()) -
                       static_cast<double>(state.companions.size())});
    return out;
  }
  for (std::size_t i = 0; i < state.size(); ++i) {
    const Vec3& q = state.points[i];
    const Vec3& w = state.companions[i];
    if (!q.allFinite() || !w.allFinite()) {
      out.push_back({i, StateViolation::Kind::NonFinite, std::nan("")});
      continue;
    }
    const double norm_err = std::abs(q.norm() - 1.0);
    if (norm_err > tolerance) out.push_back({i, StateViolation::Kind::UnitNorm, norm_err});
    const double tan_err = tangency_error(q, w);
    if (tan_err > tolerance) out.push_back({i, StateViolation::Kind::Tangency, tan_err});
  }
  return out;
}

void require_valid(const SystemState& state, double tolerance) {
  const auto violations = validate_state(state, tolerance);
  if (violations.empty()) return;
  const auto& v = violations.front();
  std::ostringstream msg;
  msg << "invalid " << to_string(state.rep) << " state at link " << v.index + 1 << ": ";
  switch (v.kind) {
    case StateViolation::Kind::UnitNorm: msg << "| ||q|| - 1 | = " << v.error; break;
    case StateViolation::Kind::Tangency: msg << "tangency error " << v.error; break;
    case StateViolation::Kind::Size: msg << "point/companion count mismatch"; break;
    case StateViolation::Kind::NonFinite: msg << "non-finite entry"; break;
  }
  throw TangencyViolation(msg.str(), state.time);
}

void repair_state(SystemState& state) {
  for (std::size_t i = 0; i < state.size(); ++i) {
    state.points[i].normalize();
    const Vec3& q = state.points[i];
    state.companions[i] -= q.dot(state.companions[i]) * q;
  }
}

}  // namespace spheredyn

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace spheredyn {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Absolute tolerance on |M + M^T| entries accepted by vee().
inline constexpr double kSkewTolerance = 1e-12;

/// Hat map: hat(x) * y == x.cross(y).
Mat3 hat(const Vec3& x);

/// Inverse of hat(). Throws NotSkewSymmetric when any entry of M + M^T
/// exceeds `tolerance` in magnitude.
Vec3 vee(const Mat3& m, double tolerance = kSkewTolerance);

inline Vec3 cross(const Vec3& x, const Vec3& y) { return x.cross(y); }
inline double dot(const Vec3& x, const Vec3& y) { return x.dot(y); }
inline Mat3 outer(const Vec3& x, const Vec3& y) { return x * y.transpose(); }

}  // namespace spheredyn

#include "assembly.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>

#include "spheredyn/errors.hpp"

namespace spheredyn::detail {

Eigen::VectorXd stack(std::span<const Vec3> v) {
  Eigen::VectorXd x(3 * static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x.segment<3>(3 * static_cast<Eigen::Index>(i)) = v[i];
  return x;
}

std::vector<Vec3> unstack(const Eigen::VectorXd& x) {
  std::vector<Vec3> v(static_cast<std::size_t>(x.size() / 3));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = x.segment<3>(3 * static_cast<Eigen::Index>(i));
  return v;
}

namespace {

template <typename OffDiagonal>
Eigen::MatrixXd assemble(const Eigen::MatrixXd& m, std::span<const Vec3> q, OffDiagonal off) {
  const auto n = static_cast<Eigen::Index>(q.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a.block<3, 3>(3 * i, 3 * i) = m(i, i) * Mat3::Identity();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      a.block<3, 3>(3 * i, 3 * j) = m(i, j) * off(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return a;
}

}  // namespace

Eigen::MatrixXd qdot_el_operator(const Eigen::MatrixXd& m, std::span<const Vec3> q) {
  return assemble(m, q, [&](std::size_t i, std::size_t) -> Mat3 {
    return Mat3::Identity() - q[i] * q[i].transpose();
  });
}

Eigen::MatrixXd velocity_metric(const Eigen::MatrixXd& m, std::span<const Vec3> q) {
  return assemble(m, q, [&](std::size_t i, std::size_t j) -> Mat3 {
    return (Mat3::Identity() - q[i] * q[i].transpose()) * (Mat3::Identity() - q[j] * q[j].transpose());
  });
}

Eigen::MatrixXd omega_metric(const Eigen::MatrixXd& m, std::span<const Vec3> q) {
  return assemble(m, q, [&](std::size_t i, std::size_t j) -> Mat3 {
    return hat(q[i]).transpose() * hat(q[j]);
  });
}

Solution solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond >= kMinReciprocalCondition)) {
    std::ostringstream msg;
    msg << "singular inertia operator (condition estimate " << (rcond > 0 ? 1.0 / rcond : INFINITY)
        << " exceeds " << 1.0 / kMinReciprocalCondition << ")";
    throw SingularInertia(msg.str());
  }
  return {lu.solve(b), rcond};
}

}  // namespace spheredyn::detail

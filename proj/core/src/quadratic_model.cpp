#include "spheredyn/quadratic_model.hpp"

#include <Eigen/Cholesky>
#include <sstream>

#include "assembly.hpp"
#include "spheredyn/errors.hpp"

namespace spheredyn {

QuadraticModel::QuadraticModel(std::size_t n, InertiaFn inertia, PotentialFn potential,
                               InertiaGradFn inertia_grad, PotentialGradFn potential_grad)
    : n_(n),
      inertia_(std::move(inertia)),
      potential_(std::move(potential)),
      inertia_grad_(std::move(inertia_grad)),
      potential_grad_(std::move(potential_grad)) {
  if (n_ == 0) throw InvalidParams("QuadraticModel: number of spheres must be positive");
  if (!inertia_ || !potential_) throw InvalidParams("QuadraticModel: inertia and potential are required");
}

Eigen::MatrixXd QuadraticModel::inertia(Configuration q) const {
  Eigen::MatrixXd m = inertia_(q);
  if (m.rows() != static_cast<Eigen::Index>(n_) || m.cols() != static_cast<Eigen::Index>(n_)) {
    std::ostringstream msg;
    msg << "inertia callback returned " << m.rows() << "x" << m.cols() << ", expected " << n_;
    throw InvalidParams(msg.str());
  }
  return m;
}

InertiaGradient QuadraticModel::inertia_grad(Configuration q, std::size_t i) const {
  if (inertia_grad_) return inertia_grad_(q, i);

  InertiaGradient grad(n_);
  std::vector<Vec3> shifted(q.begin(), q.end());
  const double h = fd_step(q[i]);
  for (int c = 0; c < 3; ++c) {
    shifted[i] = q[i];
    shifted[i][c] += h;
    const Eigen::MatrixXd plus = inertia(shifted);
    shifted[i] = q[i];
    shifted[i][c] -= h;
    const Eigen::MatrixXd minus = inertia(shifted);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) grad(j, k)[c] = (plus(j, k) - minus(j, k)) / (2.0 * h);
  }
  const Mat3 p = tangent_projector(q[i]);
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t k = 0; k < n_; ++k) grad(j, k) = p * grad(j, k);
  return grad;
}

double QuadraticModel::potential(Configuration q) const { return potential_(q); }

Vec3 QuadraticModel::potential_grad(Configuration q, std::size_t i) const {
  if (potential_grad_) return potential_grad_(q, i);

  std::vector<Vec3> shifted(q.begin(), q.end());
  const double h = fd_step(q[i]);
  Vec3 grad;
  for (int c = 0; c < 3; ++c) {
    shifted[i] = q[i];
    shifted[i][c] += h;
    const double plus = potential_(shifted);
    shifted[i] = q[i];
    shifted[i][c] -= h;
    const double minus = potential_(shifted);
    grad[c] = (plus - minus) / (2.0 * h);
  }
  return tangent_projector(q[i]) * grad;
}

QuadraticModel QuadraticModel::without_analytic_derivatives() const {
  return QuadraticModel(n_, inertia_, potential_);
}

bool QuadraticModel::kinetic_form_positive_definite(Configuration q) const {
  const Eigen::MatrixXd m = inertia(q);
  for (std::size_t i = 0; i < n_; ++i)
    if (!(m(i, i) > 0.0)) return false;
  Eigen::LLT<Eigen::MatrixXd> llt(detail::velocity_metric(m, q));
  return llt.info() == Eigen::Success;
}

std::vector<Vec3> ForceModel::operator()(double t, const SystemState& state) const {
  if (!fn_) return std::vector<Vec3>(state.size(), Vec3::Zero());
  std::vector<Vec3> f = fn_(t, state);
  if (f.size() != state.size()) throw InvalidParams("force callback returned the wrong number of vectors");
  for (const auto& v : f)
    if (!v.allFinite()) throw NumericalFailure("force callback returned a non-finite vector", t);
  return f;
}

}  // namespace spheredyn

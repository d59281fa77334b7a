#include "spheredyn/lagrangian.hpp"

#include "assembly.hpp"
#include "spheredyn/errors.hpp"

namespace spheredyn {

namespace {

void require_rep(const SystemState& state, Representation rep, const char* who) {
  if (state.rep != rep) {
    throw InvalidParams(std::string(who) + ": expected a " + std::string(to_string(rep)) +
                        " state, got " + std::string(to_string(state.rep)));
  }
}

void require_size(const QuadraticModel& model, const SystemState& state) {
  if (state.size() != model.size() || state.companions.size() != model.size())
    throw InvalidParams("state size does not match the model");
}

std::vector<Vec3> config_force_terms(const QuadraticModel& model, std::span<const Vec3> q,
                                     std::span<const Vec3> qd) {
  const std::size_t n = model.size();
  std::vector<InertiaGradient> grads;
  grads.reserve(n);
  for (std::size_t k = 0; k < n; ++k) grads.push_back(model.inertia_grad(q, k));

  std::vector<Vec3> f(n, Vec3::Zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double mdot = 0.0;
      for (std::size_t k = 0; k < n; ++k) mdot += grads[k](i, j).dot(qd[k]);
      f[i] += mdot * qd[j];
    }
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) f[i] -= 0.5 * qd[j].dot(qd[k]) * grads[i](j, k);
  }
  return f;
}

double kinetic_from_velocities(const Eigen::MatrixXd& m, std::span<const Vec3> qd) {
  double t = 0.0;
  const auto n = qd.size();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      t += m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) * qd[j].dot(qd[k]);
  return 0.5 * t;
}

}  // namespace

std::vector<Vec3> velocities_of(const SystemState& state) {
  switch (state.rep) {
    case Representation::Velocity:
      return state.companions;
    case Representation::Omega: {
      std::vector<Vec3> qd(state.size());
      for (std::size_t i = 0; i < state.size(); ++i) qd[i] = state.companions[i].cross(state.points[i]);
      return qd;
    }
    default:
      throw InvalidParams("velocities_of: momentum states need the model's inverse Legendre map");
  }
}

SystemState to_omega(const SystemState& state) {
  if (state.rep == Representation::Omega) return state;
  require_rep(state, Representation::Velocity, "to_omega");
  SystemState out = state;
  out.rep = Representation::Omega;
  for (std::size_t i = 0; i < state.size(); ++i) out.companions[i] = state.points[i].cross(state.companions[i]);
  return out;
}

SystemState to_velocity(const SystemState& state) {
  if (state.rep == Representation::Velocity) return state;
  require_rep(state, Representation::Omega, "to_velocity");
  SystemState out = state;
  out.rep = Representation::Velocity;
  out.companions = velocities_of(state);
  return out;
}

std::vector<Vec3> eval_F_qdot(const QuadraticModel& model, const SystemState& state) {
  require_rep(state, Representation::Velocity, "eval_F_qdot");
  require_size(model, state);
  return config_force_terms(model, state.points, state.companions);
}

std::vector<Vec3> eval_F_omega(const QuadraticModel& model, const SystemState& state) {
  require_rep(state, Representation::Omega, "eval_F_omega");
  require_size(model, state);
  return config_force_terms(model, state.points, velocities_of(state));
}

AccelerationResult el_accel_qdot(const QuadraticModel& model, const ForceModel& forces,
                                 const SystemState& state, const EvalOptions& options) {
  require_rep(state, Representation::Velocity, "el_accel_qdot");
  require_size(model, state);
  if (options.check_state) require_valid(state, options.tolerance);

  const auto& q = state.points;
  const auto& qd = state.companions;
  const std::size_t n = model.size();
  const Eigen::MatrixXd m = model.inertia(q);
  const std::vector<Vec3> big_f = config_force_terms(model, q, qd);
  const std::vector<Vec3> f = forces(state.time, state);

  Eigen::VectorXd rhs(3 * static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const Vec3 generalized = big_f[i] + model.potential_grad(q, i) - f[i];
    rhs.segment<3>(3 * ii) = -m(ii, ii) * qd[i].squaredNorm() * q[i] - tangent_projector(q[i]) * generalized;
  }
  const auto sol = detail::solve(detail::qdot_el_operator(m, q), rhs);
  return {detail::unstack(sol.x), sol.rcond};
}

AccelerationResult el_accel_omega(const QuadraticModel& model, const ForceModel& forces,
                                  const SystemState& state, const EvalOptions& options) {
  require_rep(state, Representation::Omega, "el_accel_omega");
  require_size(model, state);
  if (options.check_state) require_valid(state, options.tolerance);

  const auto& q = state.points;
  const auto& w = state.companions;
  const std::size_t n = model.size();
  const Eigen::MatrixXd m = model.inertia(q);
  const std::vector<Vec3> big_f = config_force_terms(model, q, velocities_of(state));
  const std::vector<Vec3> f = forces(state.time, state);

  Eigen::VectorXd rhs(3 * static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const Mat3 s = hat(q[i]);
    Vec3 b = -s * (big_f[i] + model.potential_grad(q, i) - f[i]);
    // j == i contributes S(q_i) q_i = 0
    for (std::size_t j = 0; j < n; ++j)
      b += m(ii, static_cast<Eigen::Index>(j)) * w[j].squaredNorm() * (s * q[j]);
    rhs.segment<3>(3 * ii) = b;
  }
  const auto sol = detail::solve(detail::omega_metric(m, q), rhs);
  std::vector<Vec3> wd = detail::unstack(sol.x);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 unit = q[i].normalized();
    wd[i] -= unit.dot(wd[i]) * unit;
  }
  return {std::move(wd), sol.rcond};
}

LagrangianValue lagrangian_value(const QuadraticModel& model, const SystemState& state) {
  require_size(model, state);
  const std::vector<Vec3> qd = velocities_of(state);
  return {kinetic_from_velocities(model.inertia(state.points), qd), model.potential(state.points)};
}

}  // namespace spheredyn

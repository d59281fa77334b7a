#include "spheredyn/hamiltonian.hpp"

#include "assembly.hpp"
#include "spheredyn/errors.hpp"
#include "spheredyn/lagrangian.hpp"

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

bool is_momentum(Representation rep) {
  return rep == Representation::MomentumMu || rep == Representation::MomentumPi;
}

Eigen::MatrixXd forward_operator(Representation rep, const Eigen::MatrixXd& m, Configuration q) {
  return rep == Representation::MomentumMu ? detail::velocity_metric(m, q) : detail::omega_metric(m, q);
}

// Gradient in q_i of v^T A(q) v for the forward operator of `rep`, with v held fixed.
Vec3 quadratic_form_gradient(const QuadraticModel& model, Representation rep, Configuration q,
                             std::span<const Vec3> v, std::size_t i) {
  const std::size_t n = model.size();
  const Eigen::MatrixXd m = model.inertia(q);
  const InertiaGradient dm = model.inertia_grad(q, i);
  const auto mij = [&](std::size_t a, std::size_t b) {
    return m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  };

  // u_k is the image of v_k under the factor appearing in the off-diagonal blocks.
  std::vector<Vec3> u(n);
  for (std::size_t k = 0; k < n; ++k)
    u[k] = rep == Representation::MomentumMu ? Vec3(v[k] - q[k].dot(v[k]) * q[k]) : Vec3(q[k].cross(v[k]));

  Vec3 g = Vec3::Zero();
  for (std::size_t k = 0; k < n; ++k) {
    g += dm(k, k) * v[k].squaredNorm();
    for (std::size_t l = 0; l < n; ++l)
      if (l != k) g += dm(k, l) * u[k].dot(u[l]);
  }
  for (std::size_t l = 0; l < n; ++l) {
    if (l == i) continue;
    if (rep == Representation::MomentumMu) {
      g += 2.0 * mij(i, l) * (-q[i].dot(v[i]) * u[l] - q[i].dot(u[l]) * v[i]);
    } else {
      g += 2.0 * mij(i, l) * v[i].cross(u[l]);
    }
  }
  return g;
}

}  // namespace

InverseInertia::InverseInertia(const QuadraticModel& model, Representation rep) : model_(&model), rep_(rep) {
  if (!is_momentum(rep)) throw InvalidParams("InverseInertia: representation must be mu or pi");
}

std::vector<Vec3> InverseInertia::apply(Configuration q, std::span<const Vec3> momenta) const {
  const Eigen::MatrixXd m = model_->inertia(q);
  return detail::unstack(detail::solve(forward_operator(rep_, m, q), detail::stack(momenta)).x);
}

double InverseInertia::kinetic(Configuration q, std::span<const Vec3> momenta) const {
  const std::vector<Vec3> v = apply(q, momenta);
  double t = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) t += momenta[k].dot(v[k]);
  return 0.5 * t;
}

SystemState legendre_mu(const QuadraticModel& model, const SystemState& velocity_state) {
  require_rep(velocity_state, Representation::Velocity, "legendre_mu");
  require_size(model, velocity_state);
  require_valid(velocity_state);
  const auto& q = velocity_state.points;
  const auto& qd = velocity_state.companions;
  const Eigen::MatrixXd m = model.inertia(q);

  SystemState out = velocity_state;
  out.rep = Representation::MomentumMu;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    Vec3 coupled = Vec3::Zero();
    for (std::size_t j = 0; j < q.size(); ++j)
      if (j != i) coupled += m(ii, static_cast<Eigen::Index>(j)) * qd[j];
    out.companions[i] = m(ii, ii) * qd[i] + tangent_projector(q[i]) * coupled;
  }
  return out;
}

SystemState inverse_legendre_mu(const QuadraticModel& model, const SystemState& mu_state) {
  require_rep(mu_state, Representation::MomentumMu, "inverse_legendre_mu");
  require_size(model, mu_state);
  require_valid(mu_state);
  SystemState out = mu_state;
  out.rep = Representation::Velocity;
  out.companions = InverseInertia(model, Representation::MomentumMu).apply(mu_state.points, mu_state.companions);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.companions[i] = tangent_projector(out.points[i]) * out.companions[i];
  return out;
}

SystemState legendre_pi(const QuadraticModel& model, const SystemState& omega_state) {
  require_rep(omega_state, Representation::Omega, "legendre_pi");
  require_size(model, omega_state);
  require_valid(omega_state);
  const auto& q = omega_state.points;
  const auto& w = omega_state.companions;
  const Eigen::MatrixXd m = model.inertia(q);

  SystemState out = omega_state;
  out.rep = Representation::MomentumPi;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    Vec3 pi = m(ii, ii) * w[i];
    for (std::size_t j = 0; j < q.size(); ++j)
      if (j != i) pi += m(ii, static_cast<Eigen::Index>(j)) * (hat(q[i]).transpose() * (q[j].cross(w[j])));
    out.companions[i] = pi;
  }
  return out;
}

SystemState inverse_legendre_pi(const QuadraticModel& model, const SystemState& pi_state) {
  require_rep(pi_state, Representation::MomentumPi, "inverse_legendre_pi");
  require_size(model, pi_state);
  require_valid(pi_state);
  SystemState out = pi_state;
  out.rep = Representation::Omega;
  out.companions = InverseInertia(model, Representation::MomentumPi).apply(pi_state.points, pi_state.companions);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.companions[i] = tangent_projector(out.points[i]) * out.companions[i];
  return out;
}

double hamiltonian_mu(const QuadraticModel& model, const SystemState& mu_state) {
  require_rep(mu_state, Representation::MomentumMu, "hamiltonian_mu");
  require_size(model, mu_state);
  return InverseInertia(model, mu_state.rep).kinetic(mu_state.points, mu_state.companions) +
         model.potential(mu_state.points);
}

double hamiltonian_pi(const QuadraticModel& model, const SystemState& pi_state) {
  require_rep(pi_state, Representation::MomentumPi, "hamiltonian_pi");
  require_size(model, pi_state);
  return InverseInertia(model, pi_state.rep).kinetic(pi_state.points, pi_state.companions) +
         model.potential(pi_state.points);
}

SystemState convert_state(const QuadraticModel& model, const SystemState& state, Representation target) {
  if (state.rep == target) return state;
  SystemState omega;
  switch (state.rep) {
    case Representation::Velocity: omega = to_omega(state); break;
    case Representation::Omega: omega = state; break;
    case Representation::MomentumMu: omega = to_omega(inverse_legendre_mu(model, state)); break;
    case Representation::MomentumPi: omega = inverse_legendre_pi(model, state); break;
  }
  switch (target) {
    case Representation::Velocity: return to_velocity(omega);
    case Representation::Omega: return omega;
    case Representation::MomentumMu: return legendre_mu(model, to_velocity(omega));
    case Representation::MomentumPi: return legendre_pi(model, omega);
  }
  return omega;
}

double total_energy(const QuadraticModel& model, const SystemState& state) {
  switch (state.rep) {
    case Representation::MomentumMu: return hamiltonian_mu(model, state);
    case Representation::MomentumPi: return hamiltonian_pi(model, state);
    default: return lagrangian_value(model, state).energy();
  }
}

Vec3 dH_dq(const QuadraticModel& model, const SystemState& momentum_state, std::size_t i,
           GradientMethod method, double step) {
  if (!is_momentum(momentum_state.rep)) throw InvalidParams("dH_dq: expected a mu or pi state");
  require_size(model, momentum_state);
  const InverseInertia inverse(model, momentum_state.rep);
  const auto& q = momentum_state.points;
  const auto& p = momentum_state.companions;

  Vec3 kinetic_grad;
  if (method == GradientMethod::Analytic) {
    const std::vector<Vec3> v = inverse.apply(q, p);
    kinetic_grad = -0.5 * quadratic_form_gradient(model, momentum_state.rep, q, v, i);
  } else {
    std::vector<Vec3> shifted(q.begin(), q.end());
    const double h = step * std::max(1.0, q[i].norm());
    for (int c = 0; c < 3; ++c) {
      shifted[i] = q[i];
      shifted[i][c] += h;
      const double plus = inverse.kinetic(shifted, p);
      shifted[i] = q[i];
      shifted[i][c] -= h;
      const double minus = inverse.kinetic(shifted, p);
      kinetic_grad[c] = (plus - minus) / (2.0 * h);
    }
  }
  return kinetic_grad + model.potential_grad(q, i);
}

PhaseRates ham_rhs_mu(const QuadraticModel& model, const ForceModel& forces, const SystemState& mu_state,
                      const EvalOptions& options) {
  require_rep(mu_state, Representation::MomentumMu, "ham_rhs_mu");
  require_size(model, mu_state);
  if (options.check_state) require_valid(mu_state, options.tolerance);

  const auto& q = mu_state.points;
  const auto& mu = mu_state.companions;
  const std::size_t n = q.size();
  const std::vector<Vec3> dh_dmu = InverseInertia(model, mu_state.rep).apply(q, mu);
  const std::vector<Vec3> f = forces(mu_state.time, mu_state);

  PhaseRates rates{std::vector<Vec3>(n), std::vector<Vec3>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const Mat3 p = tangent_projector(q[i]);
    rates.qdot[i] = p * dh_dmu[i];
    rates.pdot[i] = -p * (dH_dq(model, mu_state, i, options.gradient) - f[i]) + dh_dmu[i].cross(mu[i].cross(q[i]));
  }
  return rates;
}

PhaseRates ham_rhs_pi(const QuadraticModel& model, const ForceModel& forces, const SystemState& pi_state,
                      const EvalOptions& options) {
  require_rep(pi_state, Representation::MomentumPi, "ham_rhs_pi");
  require_size(model, pi_state);
  if (options.check_state) require_valid(pi_state, options.tolerance);

  const auto& q = pi_state.points;
  const auto& pi = pi_state.companions;
  const std::size_t n = q.size();
  const std::vector<Vec3> dh_dpi = InverseInertia(model, pi_state.rep).apply(q, pi);
  const std::vector<Vec3> f = forces(pi_state.time, pi_state);

  PhaseRates rates{std::vector<Vec3>(n), std::vector<Vec3>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const Mat3 s = hat(q[i]);
    rates.qdot[i] = -s * dh_dpi[i];
    rates.pdot[i] = -s * dH_dq(model, pi_state, i, options.gradient) + dh_dpi[i].cross(pi[i]) + s * f[i];
  }
  return rates;
}

}  // namespace spheredyn

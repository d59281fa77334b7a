#include "spheredyn/variational.hpp"

#include <cmath>
#include <future>
#include <numbers>

#include "assembly.hpp"
#include "spheredyn/errors.hpp"
#include "spheredyn/hamiltonian.hpp"
#include "spheredyn/lagrangian.hpp"

namespace spheredyn {

double integrate_uniform(std::span<const double> values, double spacing, Quadrature rule) {
  const std::size_t count = values.size();
  if (count < 3) throw InsufficientSamples("quadrature needs at least three samples");
  const std::size_t intervals = count - 1;

  if (rule == Quadrature::Trapezoid) {
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t k = 1; k + 1 < count; ++k) sum += values[k];
    return sum * spacing;
  }

  const std::size_t simpson_intervals = intervals % 2 == 0 ? intervals : intervals - 3;
  double total = 0.0;
  if (simpson_intervals > 0) {
    double sum = values[0] + values[simpson_intervals];
    for (std::size_t k = 1; k < simpson_intervals; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * values[k];
    total += sum * spacing / 3.0;
  }
  if (simpson_intervals != intervals) {
    const std::size_t k = simpson_intervals;
    total += 3.0 * spacing / 8.0 * (values[k] + 3.0 * values[k + 1] + 3.0 * values[k + 2] + values[k + 3]);
  }
  return total;
}

namespace {

double sample_spacing(const Trajectory& trajectory) {
  const double span = trajectory.samples.back().time - trajectory.samples.front().time;
  return span / static_cast<double>(trajectory.size() - 1);
}

double integrand(const QuadraticModel& model, const SystemState& sample, ActionForm form) {
  switch (form) {
    case ActionForm::LQdot:
      return lagrangian_value(model, convert_state(model, sample, Representation::Velocity)).value();
    case ActionForm::LOmega: {
      const SystemState omega = convert_state(model, sample, Representation::Omega);
      const Eigen::VectorXd w = detail::stack(omega.companions);
      const Eigen::MatrixXd b = detail::omega_metric(model.inertia(omega.points), omega.points);
      return 0.5 * w.dot(b * w) - model.potential(omega.points);
    }
    case ActionForm::PhaseMu: {
      const SystemState mu = convert_state(model, sample, Representation::MomentumMu);
      const SystemState vel = convert_state(model, sample, Representation::Velocity);
      double pairing = 0.0;
      for (std::size_t i = 0; i < mu.size(); ++i) pairing += mu.companions[i].dot(vel.companions[i]);
      return pairing - hamiltonian_mu(model, mu);
    }
    case ActionForm::PhasePi: {
      const SystemState pi = convert_state(model, sample, Representation::MomentumPi);
      const SystemState omega = convert_state(model, sample, Representation::Omega);
      double pairing = 0.0;
      for (std::size_t i = 0; i < pi.size(); ++i) pairing += pi.companions[i].dot(omega.companions[i]);
      return pairing - hamiltonian_pi(model, pi);
    }
  }
  return 0.0;
}

}  // namespace

ActionValue action(const QuadraticModel& model, const Trajectory& trajectory, ActionForm form, Quadrature rule) {
  if (trajectory.size() < 3) throw InsufficientSamples("action needs at least three trajectory samples");
  std::vector<double> values;
  values.reserve(trajectory.size());
  for (const auto& sample : trajectory.samples) values.push_back(integrand(model, sample, form));
  return {integrate_uniform(values, sample_spacing(trajectory), rule), rule, trajectory.size()};
}

Vec3 VariationCurve::gamma(std::size_t i, double t, double t0, double tf, const Vec3& q) const {
  const double s = std::sin(std::numbers::pi * (t - t0) / (tf - t0));
  const Vec3& c = coefficients[i];
  return s * (c - q.dot(c) * q);
}

Vec3 VariationCurve::gamma_dot(std::size_t i, double t, double t0, double tf, const Vec3& q,
                               const Vec3& qdot) const {
  const double rate = std::numbers::pi / (tf - t0);
  const double phase = rate * (t - t0);
  const Vec3& c = coefficients[i];
  const Vec3 projected = c - q.dot(c) * q;
  const Vec3 projected_rate = -(qdot * q.dot(c) + q * qdot.dot(c));
  return rate * std::cos(phase) * projected + std::sin(phase) * projected_rate;
}

VariationCurve VariationCurve::random(std::size_t n, std::mt19937_64& rng, double epsilon) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  VariationCurve curve;
  curve.epsilon = epsilon;
  curve.coefficients.resize(n);
  for (auto& c : curve.coefficients) c = Vec3(coeff(rng), coeff(rng), coeff(rng));
  return curve;
}

Trajectory to_velocity_trajectory(const QuadraticModel& model, const Trajectory& trajectory) {
  Trajectory out = trajectory;
  for (auto& s : out.samples) s = convert_state(model, s, Representation::Velocity);
  return out;
}

Trajectory perturb_trajectory(const Trajectory& trajectory, const VariationCurve& curve, double epsilon,
                              VelocityMode mode) {
  if (trajectory.empty()) return trajectory;
  const std::size_t n = trajectory.samples.front().size();
  if (curve.coefficients.size() != n)
    throw CurveMismatch("variation curve has " + std::to_string(curve.coefficients.size()) +
                        " components for a trajectory of " + std::to_string(n) + " spheres");
  const Representation rep = trajectory.samples.front().rep;
  if (rep != Representation::Velocity && rep != Representation::Omega)
    throw CurveMismatch("perturb_trajectory needs a qdot or omega trajectory");
  if (epsilon == 0.0) return trajectory;

  const double t0 = trajectory.samples.front().time;
  const double tf = trajectory.samples.back().time;
  if (!(tf > t0)) return trajectory;

  Trajectory out = trajectory;
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const SystemState& s = trajectory.samples[k];
    if (s.size() != n || s.rep != rep) throw CurveMismatch("trajectory samples are inconsistent");
    const std::vector<Vec3> qd = velocities_of(s);
    SystemState& p = out.samples[k];
    p.rep = Representation::Velocity;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 g = curve.gamma(i, s.time, t0, tf, s.points[i]);
      const Mat3 r = rotation_exp(epsilon * g);
      p.points[i] = exp_rotate(g, epsilon, SpherePoint::repaired(s.points[i])).vec();
      if (mode == VelocityMode::Analytic) {
        const Vec3 gd = curve.gamma_dot(i, s.time, t0, tf, s.points[i], qd[i]);
        p.companions[i] = r * qd[i] + epsilon * gd.cross(p.points[i]);
      }
    }
  }

  if (mode == VelocityMode::FiniteDifference) {
    const std::size_t count = out.size();
    if (count < 3) throw InsufficientSamples("finite-difference velocities need at least three samples");
    const double h = sample_spacing(out);
    for (std::size_t k = 0; k < count; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto q = [&](std::size_t idx) -> const Vec3& { return out.samples[idx].points[i]; };
        Vec3 v;
        if (k == 0) v = (-3.0 * q(0) + 4.0 * q(1) - q(2)) / (2.0 * h);
        else if (k + 1 == count) v = (3.0 * q(k) - 4.0 * q(k - 1) + q(k - 2)) / (2.0 * h);
        else v = (q(k + 1) - q(k - 1)) / (2.0 * h);
        out.samples[k].companions[i] = v - q(k).dot(v) * q(k);
      }
    }
  }

  if (rep == Representation::Omega)
    for (auto& s : out.samples) s = to_omega(s);
  return out;
}

double dalembert_residual(const QuadraticModel& model, const ForceModel& forces, const Trajectory& solution,
                          std::span<const VariationCurve> curves) {
  if (solution.size() < 2) return 0.0;
  const double t0 = solution.samples.front().time;
  const double tf = solution.samples.back().time;
  if (!(tf > t0)) return 0.0;

  const Trajectory base = to_velocity_trajectory(model, solution);
  const double spacing = sample_spacing(base);
  std::vector<std::vector<Vec3>> force_samples;
  force_samples.reserve(base.size());
  for (const auto& s : base.samples) force_samples.push_back(forces(s.time, s));

  double worst = 0.0;
  for (const auto& curve : curves) {
    const double eps = curve.epsilon;
    const double plus = action(model, perturb_trajectory(base, curve, eps), ActionForm::LQdot).value;
    const double minus = action(model, perturb_trajectory(base, curve, -eps), ActionForm::LQdot).value;
    const double action_variation = (plus - minus) / (2.0 * eps);

    std::vector<double> work(base.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
      const SystemState& s = base.samples[k];
      double w = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i)
        w += force_samples[k][i].dot(curve.gamma(i, s.time, t0, tf, s.points[i]).cross(s.points[i]));
      work[k] = w;
    }
    const double virtual_work = integrate_uniform(work, spacing, Quadrature::Simpson);
    worst = std::max(worst, std::abs(action_variation + virtual_work));
  }
  return worst;
}

std::array<SystemState, 4> initial_states(const QuadraticModel& model, const SystemState& omega_state) {
  if (omega_state.rep != Representation::Omega) throw InvalidParams("initial_states expects an omega state");
  std::array<SystemState, 4> out;
  for (std::size_t k = 0; k < 4; ++k) out[k] = convert_state(model, omega_state, representation_of(kAllFormulations[k]));
  return out;
}

AgreementReport cross_form_agreement(const QuadraticModel& model, const ForceModel& forces,
                                     const SystemState& omega_state, const IntegratorSpec& spec,
                                     GradientMethod gradient) {
  const auto starts = initial_states(model, omega_state);
  std::array<std::future<Trajectory>, 4> jobs;
  for (std::size_t k = 0; k < 4; ++k) {
    jobs[k] = std::async(std::launch::async, [&, k] {
      return integrate(kAllFormulations[k], model, forces, starts[k], spec, gradient);
    });
  }
  AgreementReport report;
  for (std::size_t k = 0; k < 4; ++k) report.trajectories[k] = jobs[k].get();

  const std::size_t count = report.trajectories[0].size();
  report.times.resize(count);
  report.divergence.assign(count, 0.0);
  std::size_t pair = 0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b, ++pair) {
      for (std::size_t k = 0; k < count; ++k) {
        const auto& sa = report.trajectories[a].samples[k];
        const auto& sb = report.trajectories[b].samples[k];
        double d = 0.0;
        for (std::size_t i = 0; i < sa.size(); ++i) d = std::max(d, (sa.points[i] - sb.points[i]).norm());
        report.pairwise[pair] = std::max(report.pairwise[pair], d);
        report.divergence[k] = std::max(report.divergence[k], d);
      }
    }
  }
  for (std::size_t k = 0; k < count; ++k) report.times[k] = report.trajectories[0].samples[k].time;
  for (double d : report.pairwise) report.max_divergence = std::max(report.max_divergence, d);
  return report;
}

LagrangianFn lagrangian_function(const QuadraticModel& model) {
  return [model](Configuration q, std::span<const Vec3> qdot) {
    const Eigen::MatrixXd m = model.inertia(q);
    double t = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j)
      for (std::size_t k = 0; k < q.size(); ++k)
        t += m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) * qdot[j].dot(qdot[k]);
    return 0.5 * t - model.potential(q);
  };
}

std::vector<Vec3> el_residual_general(const LagrangianFn& lagrangian, const SystemState& velocity_state,
                                      std::span<const Vec3> accel, std::span<const Vec3> forces) {
  if (velocity_state.rep != Representation::Velocity)
    throw InvalidParams("el_residual_general expects a qdot state");
  const std::size_t n = velocity_state.size();
  const auto& q0 = velocity_state.points;
  const auto& v0 = velocity_state.companions;

  constexpr double kConfigStep = 1e-6;
  constexpr double kPathStep = 1e-4;
  constexpr double kVelocityStep = 1e-4;

  // Point on the curve at time offset s, with qdot_i[c] shifted by dv.
  std::vector<Vec3> q(n), v(n);
  const auto along = [&](double s, std::size_t i, int c, double dv) {
    for (std::size_t j = 0; j < n; ++j) {
      q[j] = q0[j] + s * v0[j] + 0.5 * s * s * accel[j];
      v[j] = v0[j] + s * accel[j];
    }
    v[i][c] += dv;
    return lagrangian(q, v);
  };

  std::vector<Vec3> residual(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 ddt_momentum, dl_dq;
    for (int c = 0; c < 3; ++c) {
      ddt_momentum[c] = (along(kPathStep, i, c, kVelocityStep) - along(kPathStep, i, c, -kVelocityStep) -
                         along(-kPathStep, i, c, kVelocityStep) + along(-kPathStep, i, c, -kVelocityStep)) /
                        (4.0 * kPathStep * kVelocityStep);

      q.assign(q0.begin(), q0.end());
      const double h = kConfigStep * std::max(1.0, q0[i].norm());
      q[i][c] += h;
      const double plus = lagrangian(q, v0);
      q[i][c] -= 2.0 * h;
      const double minus = lagrangian(q, v0);
      dl_dq[c] = (plus - minus) / (2.0 * h);
    }
    Vec3 generalized = ddt_momentum - dl_dq;
    if (!forces.empty()) generalized -= forces[i];
    residual[i] = tangent_projector(q0[i]) * generalized;
  }
  return residual;
}

}  // namespace spheredyn

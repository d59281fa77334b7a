#include "spheredyn/integrator.hpp"

#include <cmath>
#include <sstream>

#include "spheredyn/errors.hpp"
#include "spheredyn/hamiltonian.hpp"
#include "spheredyn/lagrangian.hpp"

namespace spheredyn {

Representation representation_of(Formulation formulation) {
  switch (formulation) {
    case Formulation::Qdot: return Representation::Velocity;
    case Formulation::Omega: return Representation::Omega;
    case Formulation::Mu: return Representation::MomentumMu;
    case Formulation::Pi: return Representation::MomentumPi;
  }
  return Representation::Omega;
}

std::string_view to_string(Formulation formulation) { return to_string(representation_of(formulation)); }

std::optional<Formulation> parse_formulation(std::string_view name) {
  for (Formulation f : kAllFormulations)
    if (to_string(f) == name) return f;
  return std::nullopt;
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::RK4: return "rk4";
    case Method::Heun: return "heun";
    case Method::Euler: return "euler";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::RK4, Method::Heun, Method::Euler})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

void IntegratorSpec::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidParams("integrator step must be positive");
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw InvalidParams("integrator horizon must be non-negative");
  if (horizon > 0.0 && step > horizon) throw InvalidParams("integrator step exceeds the horizon");
}

std::size_t IntegratorSpec::steps() const {
  // Relative slack absorbs representation error in horizon / step, e.g. 5 / 0.001.
  return static_cast<std::size_t>(std::floor(horizon / step * (1.0 + 1e-12)));
}

StateRates evaluate_rates(Formulation formulation, const QuadraticModel& model, const ForceModel& forces,
                          const SystemState& state, const EvalOptions& options) {
  switch (formulation) {
    case Formulation::Qdot: {
      auto acc = el_accel_qdot(model, forces, state, options);
      return {state.companions, std::move(acc.second)};
    }
    case Formulation::Omega: {
      auto acc = el_accel_omega(model, forces, state, options);
      return {velocities_of(state), std::move(acc.second)};
    }
    case Formulation::Mu: {
      auto rates = ham_rhs_mu(model, forces, state, options);
      return {std::move(rates.qdot), std::move(rates.pdot)};
    }
    case Formulation::Pi: {
      auto rates = ham_rhs_pi(model, forces, state, options);
      return {std::move(rates.qdot), std::move(rates.pdot)};
    }
  }
  throw InvalidParams("unknown formulation");
}

SampleDiagnostics measure(const QuadraticModel& model, const SystemState& state) {
  SampleDiagnostics d;
  d.time = state.time;
  d.energy = total_energy(model, state);
  for (std::size_t i = 0; i < state.size(); ++i) {
    d.max_norm_error = std::max(d.max_norm_error, std::abs(state.points[i].norm() - 1.0));
    d.max_tangency_error = std::max(d.max_tangency_error, std::abs(state.points[i].dot(state.companions[i])));
  }
  return d;
}

namespace {

SystemState advance(const SystemState& base, const StateRates& rates, double h) {
  SystemState out = base;
  for (std::size_t i = 0; i < base.size(); ++i) {
    out.points[i] += h * rates.points[i];
    out.companions[i] += h * rates.companions[i];
  }
  return out;
}

void accumulate(StateRates& sum, const StateRates& k, double weight) {
  for (std::size_t i = 0; i < sum.points.size(); ++i) {
    sum.points[i] += weight * k.points[i];
    sum.companions[i] += weight * k.companions[i];
  }
}

SystemState step_once(Formulation formulation, const QuadraticModel& model, const ForceModel& forces,
                      const SystemState& y, double h, Method method, const EvalOptions& options) {
  const auto rates = [&](const SystemState& s) { return evaluate_rates(formulation, model, forces, s, options); };
  const auto at = [](SystemState s, double t) {
    s.time = t;
    return s;
  };

  switch (method) {
    case Method::Euler:
      return advance(y, rates(y), h);
    case Method::Heun: {
      StateRates k1 = rates(y);
      const StateRates k2 = rates(at(advance(y, k1, h), y.time + h));
      accumulate(k1, k2, 1.0);
      return advance(y, k1, 0.5 * h);
    }
    case Method::RK4: {
      StateRates k1 = rates(y);
      const StateRates k2 = rates(at(advance(y, k1, 0.5 * h), y.time + 0.5 * h));
      const StateRates k3 = rates(at(advance(y, k2, 0.5 * h), y.time + 0.5 * h));
      const StateRates k4 = rates(at(advance(y, k3, h), y.time + h));
      accumulate(k1, k2, 2.0);
      accumulate(k1, k3, 2.0);
      accumulate(k1, k4, 1.0);
      return advance(y, k1, h / 6.0);
    }
  }
  throw InvalidParams("unknown integration method");
}

template <typename E>
[[noreturn]] void rethrow_at(const E& e, double t) {
  if (e.time()) throw e;
  std::ostringstream msg;
  msg << e.what() << " (t = " << t << ")";
  throw E(msg.str(), t);
}

void check_divergence(const SystemState& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double worst = std::max(s.points[i].cwiseAbs().maxCoeff(), s.companions[i].cwiseAbs().maxCoeff());
    if (!(worst <= kDivergenceThreshold)) {
      std::ostringstream msg;
      msg << "integration diverged at link " << i + 1 << " (|component| = " << worst << ")";
      throw DivergenceDetected(msg.str(), s.time);
    }
  }
}

}  // namespace

Trajectory integrate(Formulation formulation, const QuadraticModel& model, const ForceModel& forces,
                     const SystemState& initial, const IntegratorSpec& spec, GradientMethod gradient) {
  spec.validate();
  if (initial.rep != representation_of(formulation)) {
    throw InvalidParams("initial state representation " + std::string(to_string(initial.rep)) +
                        " does not match formulation " + std::string(to_string(formulation)));
  }
  if (initial.size() != model.size()) throw InvalidParams("initial state size does not match the model");
  require_valid(initial);

  const EvalOptions stage_options{.check_state = false, .gradient = gradient};
  const std::size_t steps = spec.steps();
  const double t0 = initial.time;

  Trajectory traj;
  traj.samples.reserve(steps + 1);
  traj.diagnostics.reserve(steps + 1);
  traj.samples.push_back(initial);
  traj.diagnostics.push_back(measure(model, initial));

  SystemState y = initial;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_next = t0 + static_cast<double>(k) * spec.step;
    try {
      y = step_once(formulation, model, forces, y, t_next - y.time, spec.method, stage_options);
      y.time = t_next;
      check_divergence(y);
      if (spec.repair == Repair::Project) repair_state(y);
      traj.diagnostics.push_back(measure(model, y));
    } catch (const SingularInertia& e) {
      rethrow_at(e, t_next);
    } catch (const TangencyViolation& e) {
      rethrow_at(e, t_next);
    } catch (const DivergenceDetected& e) {
      rethrow_at(e, t_next);
    } catch (const NumericalFailure& e) {
      rethrow_at(e, t_next);
    }
    traj.samples.push_back(y);
  }
  return traj;
}

DiagnosticsSummary diagnostics_report(const Trajectory& trajectory) {
  DiagnosticsSummary s;
  s.samples = trajectory.diagnostics.size();
  if (trajectory.diagnostics.empty()) return s;
  s.initial_energy = trajectory.diagnostics.front().energy;
  double total = 0.0;
  for (const auto& d : trajectory.diagnostics) {
    const double drift = std::abs(d.energy - s.initial_energy);
    s.max_energy_drift = std::max(s.max_energy_drift, drift);
    total += drift;
    s.max_norm_error = std::max(s.max_norm_error, d.max_norm_error);
    s.max_tangency_error = std::max(s.max_tangency_error, d.max_tangency_error);
  }
  s.mean_energy_drift = total / static_cast<double>(s.samples);
  return s;
}

}  // namespace spheredyn

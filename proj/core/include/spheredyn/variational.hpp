#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "spheredyn/integrator.hpp"
#include "spheredyn/quadratic_model.hpp"

namespace spheredyn {

enum class ActionForm { LQdot, LOmega, PhaseMu, PhasePi };
enum class Quadrature { Trapezoid, Simpson };

struct ActionValue {
  double value = 0.0;
  Quadrature quadrature = Quadrature::Simpson;
  std::size_t samples = 0;
};

/// Composite quadrature on a uniform grid. Simpson falls back to the 3/8
/// rule on the last three intervals when the interval count is odd.
/// Throws InsufficientSamples for fewer than three samples.
double integrate_uniform(std::span<const double> values, double spacing, Quadrature rule);

/// Action integral of the chosen integrand along a trajectory:
///   LQdot:   L(q, qdot)            LOmega:  L~(q, omega) = 1/2 w.B(q)w - U
///   PhaseMu: sum mu.qdot - H(q,mu) PhasePi: sum pi.omega - H~(q,pi)
/// Samples are converted to the needed representation with the model's
/// kinematic and Legendre maps.
ActionValue action(const QuadraticModel& model, const Trajectory& trajectory, ActionForm form,
                   Quadrature rule = Quadrature::Simpson);

/// gamma_i(t) = sin(pi (t - t0) / (tf - t0)) (I - q_i(t) q_i(t)^T) c_i.
/// Vanishes at both ends and stays orthogonal to q_i(t) along the
/// reference trajectory.
struct VariationCurve {
  std::vector<Vec3> coefficients;
  double epsilon = 1e-5;

  Vec3 gamma(std::size_t i, double t, double t0, double tf, const Vec3& q) const;
  Vec3 gamma_dot(std::size_t i, double t, double t0, double tf, const Vec3& q, const Vec3& qdot) const;

  /// Coefficients uniform in [-1, 1]^3.
  static VariationCurve random(std::size_t n, std::mt19937_64& rng, double epsilon = 1e-5);
};

enum class VelocityMode {
  /// qdot^e = R qdot + e S(gamma_dot) q^e with R = exp(e S(gamma)); first-order
  /// exact in e and tangent by construction.
  Analytic,
  /// Second-order finite differences in time of the perturbed points.
  FiniteDifference,
};

/// Converts every sample to the Velocity representation.
Trajectory to_velocity_trajectory(const QuadraticModel& model, const Trajectory& trajectory);

/// q_i^e(t) = exp(e S(gamma_i(t))) q_i(t) on every sample. The trajectory
/// must be in Velocity or Omega representation; the result keeps it.
/// Throws CurveMismatch when the curve does not fit the trajectory.
Trajectory perturb_trajectory(const Trajectory& trajectory, const VariationCurve& curve, double epsilon,
                              VelocityMode mode = VelocityMode::Analytic);

/// max over curves of |dG/de|_{e=0} + dW|, where G is the action of the
/// perturbed family (central differences in e with the curve's epsilon) and
/// dW the virtual work integral of the generalized forces. Vanishes on
/// solutions up to discretization error.
double dalembert_residual(const QuadraticModel& model, const ForceModel& forces, const Trajectory& solution,
                          std::span<const VariationCurve> curves);

struct AgreementReport {
  /// max over time and links of ||q_i^A - q_i^B||, over all six pairs.
  double max_divergence = 0.0;
  /// Pairs in order (qdot,omega) (qdot,mu) (qdot,pi) (omega,mu) (omega,pi) (mu,pi).
  std::array<double, 6> pairwise{};
  std::vector<double> times;
  /// Max pairwise divergence at each sample time.
  std::vector<double> divergence;
  /// Indexed like kAllFormulations.
  std::array<Trajectory, 4> trajectories;
};

/// Initial states for all four formulations from one (q, omega) state.
std::array<SystemState, 4> initial_states(const QuadraticModel& model, const SystemState& omega_state);

/// Integrates the four formulations from one physical initial condition
/// (given in the Omega representation) and compares configurations.
/// The four integrations run concurrently; results are merged in a fixed order.
AgreementReport cross_form_agreement(const QuadraticModel& model, const ForceModel& forces,
                                     const SystemState& omega_state, const IntegratorSpec& spec,
                                     GradientMethod gradient = GradientMethod::Analytic);

using LagrangianFn = std::function<double(Configuration q, std::span<const Vec3> qdot)>;

/// L(q, qdot) of a quadratic model as a plain function of ambient arguments.
LagrangianFn lagrangian_function(const QuadraticModel& model);

/// Residual of the general Euler-Lagrange equations
///   (I - q_i q_i^T) { d/dt dL/dqdot_i - dL/dq_i - f_i }
/// evaluated by finite differences along the curve with the given
/// accelerations. An empty `forces` span means zero forces.
std::vector<Vec3> el_residual_general(const LagrangianFn& lagrangian, const SystemState& velocity_state,
                                      std::span<const Vec3> accel, std::span<const Vec3> forces = {});

}  // namespace spheredyn

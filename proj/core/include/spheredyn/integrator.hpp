#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "spheredyn/options.hpp"
#include "spheredyn/quadratic_model.hpp"
#include "spheredyn/sphere.hpp"

namespace spheredyn {

/// The four equivalent equations of motion.
enum class Formulation { Qdot, Omega, Mu, Pi };

inline constexpr Formulation kAllFormulations[] = {Formulation::Qdot, Formulation::Omega, Formulation::Mu,
                                                   Formulation::Pi};

Representation representation_of(Formulation formulation);
std::string_view to_string(Formulation formulation);
std::optional<Formulation> parse_formulation(std::string_view name);

enum class Method { RK4, Heun, Euler };
enum class Repair { Project, None };

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

/// Any state component above this magnitude aborts integration.
inline constexpr double kDivergenceThreshold = 1e8;

struct IntegratorSpec {
  Method method = Method::RK4;
  double step = 1e-3;
  double horizon = 1.0;
  Repair repair = Repair::Project;

  /// Throws InvalidParams unless step > 0, horizon >= 0 and (for a
  /// non-empty horizon) step <= horizon.
  void validate() const;
  /// floor(horizon / step); the trajectory holds steps() + 1 samples.
  std::size_t steps() const;
};

struct SampleDiagnostics {
  double time = 0.0;
  double energy = 0.0;
  /// max_i | ||q_i|| - 1 |
  double max_norm_error = 0.0;
  /// max_i |q_i . w_i| for the companion w_i
  double max_tangency_error = 0.0;
};

struct Trajectory {
  std::vector<SystemState> samples;
  std::vector<SampleDiagnostics> diagnostics;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
};

/// Time derivatives of a state's points and companions.
struct StateRates {
  std::vector<Vec3> points;
  std::vector<Vec3> companions;
};

StateRates evaluate_rates(Formulation formulation, const QuadraticModel& model, const ForceModel& forces,
                          const SystemState& state, const EvalOptions& options = {});

SampleDiagnostics measure(const QuadraticModel& model, const SystemState& state);

/// Fixed-step integration of one formulation. `initial` must carry the
/// formulation's representation and satisfy the state invariants. With
/// Repair::Project every accepted step renormalizes the points and projects
/// the companions.
///
/// Failures are rethrown with the failing time attached; DivergenceDetected
/// is raised when a state component exceeds kDivergenceThreshold.
Trajectory integrate(Formulation formulation, const QuadraticModel& model, const ForceModel& forces,
                     const SystemState& initial, const IntegratorSpec& spec,
                     GradientMethod gradient = GradientMethod::Analytic);

struct DiagnosticsSummary {
  std::size_t samples = 0;
  double initial_energy = 0.0;
  double max_energy_drift = 0.0;
  double mean_energy_drift = 0.0;
  double max_norm_error = 0.0;
  double max_tangency_error = 0.0;
};

DiagnosticsSummary diagnostics_report(const Trajectory& trajectory);

}  // namespace spheredyn

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "spheredyn/integrator.hpp"
#include "spheredyn/model_library.hpp"

namespace spheredyn::scenario {

inline constexpr int kSchemaVersion = 1;

/// Schema or value error in a scenario file. `line` is 1-based, 0 when the
/// problem has no single location (for example a missing section).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line);
  int line() const { return line_; }

 private:
  int line_;
};

struct Tolerances {
  double hat_identity = 1e-10;
  double kinematics = 1e-12;
  double legendre = 1e-10;
  double dalembert = 5e-5;
};

struct CheckSettings {
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  std::size_t identity_samples = 1000;
  std::size_t curves = 20;
  /// The d'Alembert residual runs over min(horizon, this).
  double dalembert_horizon = 1.0;
};

struct ScenarioConfig {
  std::filesystem::path source;

  ChainPendulumParams model;
  Vec3 tau = Vec3::Zero();
  Vec3 d = Vec3::Zero();

  /// Unit points and tangent angular velocities after any requested repair.
  SystemState initial;
  bool repair_initial = false;

  Formulation formulation = Formulation::Omega;
  IntegratorSpec integrator;
  GradientMethod gradient = GradientMethod::Analytic;
  std::filesystem::path trajectory_path = "trajectory.csv";
  std::filesystem::path summary_path = "summary.json";

  double divergence_bound = 1e-6;
  std::string compare_stem = "compare";

  CheckSettings check;
  Tolerances tolerances;

  bool unforced() const { return tau.isZero(0.0) && d.isZero(0.0); }
  QuadraticModel build_model() const;
  ForceModel build_forces() const;
};

/// Parses and validates a scenario. Throws ConfigError for any schema or
/// value problem and IoError when the file cannot be read.
ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& source = {});

}  // namespace spheredyn::scenario

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "config.hpp"

namespace spheredyn::scenario {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

/// Largest violation of the hat-map identities over `count` random triples.
double hat_identity_error(std::mt19937_64& rng, std::size_t count);

/// Largest omega -> qdot -> omega and qdot -> omega -> qdot error.
double kinematics_roundtrip_error(std::mt19937_64& rng, std::size_t count);

/// Largest forward-inverse Legendre error of both momentum forms on random states.
double legendre_roundtrip_error(const QuadraticModel& model, std::mt19937_64& rng, std::size_t count);

/// The invariant suite behind `check`. Deterministic for a given seed.
std::vector<CheckResult> run_checks(const ScenarioConfig& config, std::uint64_t seed);

}  // namespace spheredyn::scenario

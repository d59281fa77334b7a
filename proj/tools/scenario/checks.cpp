#include "checks.hpp"

#include <algorithm>
#include <cmath>

#include "spheredyn/hamiltonian.hpp"
#include "spheredyn/lagrangian.hpp"
#include "spheredyn/so3.hpp"
#include "spheredyn/variational.hpp"

namespace spheredyn::scenario {

namespace {

Vec3 gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng), n(rng)};
}

Vec3 unit(std::mt19937_64& rng) { return gaussian(rng).normalized(); }

SystemState random_state(std::size_t n, Representation rep, std::mt19937_64& rng) {
  SystemState s;
  s.rep = rep;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 q = unit(rng);
    const Vec3 w = gaussian(rng);
    s.points.push_back(q);
    s.companions.push_back(w - q.dot(w) * q);
  }
  return s;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

double state_distance(const SystemState& a, const SystemState& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, (a.companions[i] - b.companions[i]).norm());
  return d;
}

}  // namespace

double hat_identity_error(std::mt19937_64& rng, std::size_t count) {
  double worst = 0.0;
  const Mat3 eye = Mat3::Identity();
  for (std::size_t k = 0; k < count; ++k) {
    const Vec3 x = gaussian(rng), y = gaussian(rng), z = gaussian(rng);
    const Mat3 sx = hat(x);
    const double xx = x.squaredNorm();
    const double triple = x.dot(y.cross(z));
    Mat3 cols;
    cols << x, y, z;
    const double errors[] = {
        max_abs(sx.transpose() + sx),
        max_abs(sx * y - x.cross(y)),
        max_abs(sx * sx - (-xx * eye + x * x.transpose())),
        max_abs(sx * sx * sx + xx * sx),
        std::abs(triple - y.dot(z.cross(x))),
        std::abs(triple - cols.determinant()),
        max_abs(sx * hat(y) * z - (x.dot(z) * y - x.dot(y) * z)),
        max_abs(hat(x.cross(y)) - (y * x.transpose() - x * y.transpose())),
        max_abs(vee(sx) - x),
    };
    worst = std::max(worst, *std::max_element(std::begin(errors), std::end(errors)));
  }
  return worst;
}

double kinematics_roundtrip_error(std::mt19937_64& rng, std::size_t count) {
  double worst = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const SystemState omega = random_state(1, Representation::Omega, rng);
    worst = std::max(worst, state_distance(omega, to_omega(to_velocity(omega))));
    const SystemState velocity = random_state(1, Representation::Velocity, rng);
    worst = std::max(worst, state_distance(velocity, to_velocity(to_omega(velocity))));
  }
  return worst;
}

double legendre_roundtrip_error(const QuadraticModel& model, std::mt19937_64& rng, std::size_t count) {
  double worst = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const SystemState velocity = random_state(model.size(), Representation::Velocity, rng);
    worst = std::max(worst, state_distance(velocity, inverse_legendre_mu(model, legendre_mu(model, velocity))));
    const SystemState omega = random_state(model.size(), Representation::Omega, rng);
    worst = std::max(worst, state_distance(omega, inverse_legendre_pi(model, legendre_pi(model, omega))));
  }
  return worst;
}

std::vector<CheckResult> run_checks(const ScenarioConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const QuadraticModel model = config.build_model();
  const ForceModel forces = config.build_forces();
  const Tolerances& tol = config.tolerances;
  std::vector<CheckResult> results;
  const auto record = [&](std::string name, double value, double tolerance, std::string note = {}) {
    results.push_back({std::move(name), value, tolerance, value <= tolerance, std::move(note)});
  };

  record("hat_identities", hat_identity_error(rng, config.check.identity_samples), tol.hat_identity);
  record("kinematics_roundtrip", kinematics_roundtrip_error(rng, config.check.samples), tol.kinematics);
  record("legendre_roundtrip", legendre_roundtrip_error(model, rng, config.check.samples), tol.legendre);

  const AgreementReport agreement =
      cross_form_agreement(model, forces, config.initial, config.integrator, config.gradient);
  record("cross_form_agreement", agreement.max_divergence, config.divergence_bound);

  IntegratorSpec spec = config.integrator;
  spec.horizon = std::min(spec.horizon, config.check.dalembert_horizon);
  if (spec.horizon < 2.0 * spec.step) {
    record("dalembert_residual", 0.0, tol.dalembert, "skipped: fewer than three samples");
  } else {
    const SystemState start = convert_state(model, config.initial, representation_of(config.formulation));
    const Trajectory solution = integrate(config.formulation, model, forces, start, spec, config.gradient);
    std::vector<VariationCurve> curves;
    for (std::size_t k = 0; k < config.check.curves; ++k) curves.push_back(VariationCurve::random(model.size(), rng));
    record("dalembert_residual", dalembert_residual(model, forces, solution, curves), tol.dalembert);
  }
  return results;
}

}  // namespace spheredyn::scenario

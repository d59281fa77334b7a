#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "spheredyn/errors.hpp"
#include "spheredyn/hamiltonian.hpp"
#include "spheredyn/lagrangian.hpp"
#include "spheredyn/variational.hpp"
#include "support/test_support.hpp"

namespace spheredyn {
namespace {

using testing::e1;
using testing::e2;
using testing::e3;

const ForceModel kNoForces;

SystemState swinging_state() {
  return testing::make_state(Representation::Velocity, {Vec3(std::sin(0.5), 0, -std::cos(0.5))}, {Vec3(0.3, 0.8, 0.2)});
}

Trajectory pendulum_run(double step, double horizon) {
  auto s = swinging_state();
  repair_state(s);
  return integrate(Formulation::Qdot, spherical_pendulum(1.0, 1.0, 9.81), kNoForces, s, {Method::RK4, step, horizon});
}

std::vector<VariationCurve> random_curves(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<VariationCurve> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(VariationCurve::random(n, rng));
  return out;
}

TEST(IntegrateUniform, SimpsonIsExactForCubics) {
  const auto cubic = [](double x) { return 1.0 - 2.0 * x + 0.5 * x * x * x; };
  const double exact = 2.0 - 4.0 + 0.125 * 16.0;  // over [0, 2]
  for (std::size_t intervals : {2u, 3u, 4u, 5u, 8u, 9u}) {
    std::vector<double> v;
    const double h = 2.0 / static_cast<double>(intervals);
    for (std::size_t k = 0; k <= intervals; ++k) v.push_back(cubic(h * static_cast<double>(k)));
    EXPECT_NEAR(integrate_uniform(v, h, Quadrature::Simpson), exact, 1e-13) << intervals;
  }
}

TEST(IntegrateUniform, TrapezoidIsExactForLines) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(integrate_uniform(v, 0.5, Quadrature::Trapezoid), 3.75);
}

TEST(IntegrateUniform, NeedsThreeSamples) {
  const std::vector<double> v{1.0, 2.0};
  EXPECT_THROW(integrate_uniform(v, 0.1, Quadrature::Simpson), InsufficientSamples);
}

TEST(Action, ConstantLagrangian) {
  const QuadraticModel model(
      1, [](Configuration) { return Eigen::MatrixXd::Ones(1, 1).eval(); }, [](Configuration) { return 2.5; });
  const auto s = testing::make_state(Representation::Velocity, {e3}, {Vec3::Zero()});
  const auto t = integrate(Formulation::Qdot, model, kNoForces, s, {Method::RK4, 0.1, 3.0});
  EXPECT_NEAR(action(model, t, ActionForm::LQdot).value, -2.5 * 3.0, 1e-12);
  EXPECT_NEAR(action(model, t, ActionForm::LQdot, Quadrature::Trapezoid).value, -2.5 * 3.0, 1e-12);
}

TEST(Action, AllFormsAgree) {
  const auto model = testing::varying_inertia_model();
  std::mt19937_64 rng(107);
  const auto w = testing::random_state(2, Representation::Omega, rng);
  const auto t = integrate(Formulation::Omega, model, kNoForces, w, {Method::RK4, 1e-3, 1.0});
  const double reference = action(model, t, ActionForm::LQdot).value;
  for (auto form : {ActionForm::LOmega, ActionForm::PhaseMu, ActionForm::PhasePi})
    EXPECT_NEAR(action(model, t, form).value, reference, 1e-10 * std::max(1.0, std::abs(reference)));
  const auto mu_run = integrate(Formulation::Mu, model, kNoForces, convert_state(model, w, Representation::MomentumMu),
                                {Method::RK4, 1e-3, 1.0});
  EXPECT_NEAR(action(model, mu_run, ActionForm::PhaseMu).value, reference, 1e-8);
}

TEST(Action, QuadratureOrders) {
  // Subsample one fine run so that only the quadrature changes.
  const auto model = spherical_pendulum(1.0, 1.0, 9.81);
  const auto fine = pendulum_run(1e-4, 1.2);
  const double reference = action(model, fine, ActionForm::LQdot).value;
  const auto subsampled = [&](std::size_t stride) {
    Trajectory t;
    for (std::size_t k = 0; k < fine.size(); k += stride) {
      t.samples.push_back(fine.samples[k]);
      t.diagnostics.push_back(fine.diagnostics[k]);
    }
    return t;
  };
  for (auto [rule, order] : {std::pair{Quadrature::Trapezoid, 2.0}, std::pair{Quadrature::Simpson, 4.0}}) {
    const double coarse = std::abs(action(model, subsampled(400), ActionForm::LQdot, rule).value - reference);
    const double finer = std::abs(action(model, subsampled(200), ActionForm::LQdot, rule).value - reference);
    EXPECT_NEAR(std::log2(coarse / finer), order, 0.3);
  }
}

TEST(PerturbTrajectory, ZeroEpsilonIsIdentity) {
  const auto t = pendulum_run(1e-2, 1.0);
  const auto curve = random_curves(1, 1, 1).front();
  const auto p = perturb_trajectory(t, curve, 0.0);
  for (std::size_t k = 0; k < t.size(); ++k) {
    EXPECT_EQ(p.samples[k].points, t.samples[k].points);
    EXPECT_EQ(p.samples[k].companions, t.samples[k].companions);
  }
}

TEST(PerturbTrajectory, EndpointsStayFixed) {
  const auto t = pendulum_run(1e-2, 1.0);
  const auto p = perturb_trajectory(t, random_curves(1, 1, 2).front(), 0.3);
  EXPECT_LE((p.samples.front().points[0] - t.samples.front().points[0]).norm(), 1e-12);
  EXPECT_LE((p.samples.back().points[0] - t.samples.back().points[0]).norm(), 1e-12);
  bool moved = false;
  for (std::size_t k = 0; k < t.size(); ++k) moved = moved || (p.samples[k].points[0] - t.samples[k].points[0]).norm() > 1e-3;
  EXPECT_TRUE(moved);
}

TEST(PerturbTrajectory, FirstVariationIsGammaCrossQ) {
  const auto t = pendulum_run(1e-2, 1.0);
  const auto curve = random_curves(1, 1, 3).front();
  const double eps = 1e-5;
  const auto plus = perturb_trajectory(t, curve, eps);
  const auto minus = perturb_trajectory(t, curve, -eps);
  const double t0 = t.samples.front().time, tf = t.samples.back().time;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const Vec3& q = t.samples[k].points[0];
    const Vec3 derivative = (plus.samples[k].points[0] - minus.samples[k].points[0]) / (2 * eps);
    EXPECT_LE((derivative - curve.gamma(0, t.samples[k].time, t0, tf, q).cross(q)).norm(), 1e-8);
  }
}

TEST(PerturbTrajectory, AnalyticVelocitiesMatchTimeDifferences) {
  const auto t = pendulum_run(1e-3, 1.0);
  const auto curve = random_curves(1, 1, 4).front();
  // The analytic velocity is exact to first order in epsilon only.
  const auto analytic = perturb_trajectory(t, curve, 1e-3, VelocityMode::Analytic);
  const auto numeric = perturb_trajectory(t, curve, 1e-3, VelocityMode::FiniteDifference);
  double worst = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k)
    worst = std::max(worst, (analytic.samples[k].companions[0] - numeric.samples[k].companions[0]).norm());
  EXPECT_LE(worst, 2e-5);
}

TEST(PerturbTrajectory, KeepsOmegaRepresentation) {
  const auto t = pendulum_run(1e-2, 1.0);
  Trajectory omega = t;
  for (auto& s : omega.samples) s = to_omega(s);
  const auto curve = random_curves(1, 1, 5).front();
  const auto p = perturb_trajectory(omega, curve, 0.1);
  EXPECT_EQ(p.samples[3].rep, Representation::Omega);
  const auto pv = perturb_trajectory(t, curve, 0.1);
  EXPECT_LE((to_velocity(p.samples[3]).companions[0] - pv.samples[3].companions[0]).norm(), 1e-14);
}

TEST(PerturbTrajectory, RejectsMismatchedCurve) {
  const auto t = pendulum_run(1e-2, 1.0);
  EXPECT_THROW(perturb_trajectory(t, random_curves(2, 1, 6).front(), 0.1), CurveMismatch);
}

TEST(DalembertResidual, VanishesOnSolutions) {
  const auto model = spherical_pendulum(1.0, 1.0, 9.81);
  const auto curves = random_curves(1, 20, 7);
  EXPECT_LE(dalembert_residual(model, kNoForces, pendulum_run(1e-4, 2.0), curves), 5e-5);
}

TEST(DalembertResidual, DetectsFrozenTrajectory) {
  const auto model = spherical_pendulum(1.0, 1.0, 9.81);
  auto frozen = pendulum_run(1e-3, 2.0);
  for (auto& s : frozen.samples) {
    s.points = frozen.samples.front().points;
    s.companions = {Vec3::Zero()};
  }
  EXPECT_GE(dalembert_residual(model, kNoForces, frozen, random_curves(1, 20, 7)), 1e-2);
}

TEST(DalembertResidual, ZeroDuration) {
  const auto model = spherical_pendulum(1.0, 1.0, 9.81);
  const auto t = pendulum_run(1e-2, 0.0);
  EXPECT_EQ(dalembert_residual(model, kNoForces, t, random_curves(1, 3, 8)), 0.0);
}

TEST(DalembertResidual, ForcedChain) {
  const auto p = testing::double_pendulum_params();
  const auto model = chain_pendulum(p);
  ChainForceParams fp;
  fp.tau = [](double) { return Vec3(0, 0, 0.5); };
  fp.d = [](double t) { return Vec3(0.2 * std::cos(t), 0, 0); };
  const auto forces = chain_forces(fp, p.lengths);
  std::mt19937_64 rng(109);
  const auto w = testing::random_state(2, Representation::Omega, rng);
  const auto t = integrate(Formulation::Pi, model, forces, convert_state(model, w, Representation::MomentumPi),
                           {Method::RK4, 1e-3, 1.0});
  const auto curves = random_curves(2, 10, 9);
  EXPECT_LE(dalembert_residual(model, forces, t, curves), 5e-5);
  // Dropping the forces from the balance must break it.
  EXPECT_GE(dalembert_residual(model, kNoForces, t, curves), 1e-3);
}

TEST(CrossFormAgreement, EquilibriumIsExact) {
  const auto model = spherical_pendulum(1.0, 1.0, 9.81);
  const auto s = testing::make_state(Representation::Omega, {-e3}, {Vec3::Zero()});
  const auto r = cross_form_agreement(model, kNoForces, s, {Method::RK4, 1e-2, 1.0});
  EXPECT_EQ(r.max_divergence, 0.0);
  EXPECT_EQ(r.times.size(), 101u);
}

TEST(CrossFormAgreement, VaryingInertiaModel) {
  const auto model = testing::varying_inertia_model();
  std::mt19937_64 rng(113);
  const auto s = testing::random_state(2, Representation::Omega, rng);
  const auto r = cross_form_agreement(model, kNoForces, s, {Method::RK4, 1e-3, 1.0});
  EXPECT_LE(r.max_divergence, 1e-8);
  EXPECT_EQ(r.divergence.size(), r.times.size());
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(r.trajectories[k].samples.front().rep, representation_of(kAllFormulations[k]));
}

TEST(CrossFormAgreement, RejectsNonOmegaStart) {
  const auto model = testing::double_pendulum();
  const auto s = testing::make_state(Representation::Velocity, {-e3, -e3}, {Vec3::Zero(), Vec3::Zero()});
  EXPECT_THROW(cross_form_agreement(model, kNoForces, s, {}), InvalidParams);
}

TEST(ElResidualGeneral, SolverSatisfiesGeneralEquations) {
  std::mt19937_64 rng(127);
  for (const auto& model : {testing::double_pendulum(), testing::varying_inertia_model()}) {
    const auto lagrangian = lagrangian_function(model);
    for (int k = 0; k < 50; ++k) {
      const auto s = testing::random_state(2, Representation::Velocity, rng);
      const auto qdd = el_accel_qdot(model, kNoForces, s).second;
      for (const auto& r : el_residual_general(lagrangian, s, qdd)) EXPECT_LE(r.norm(), 1e-5);
    }
  }
}

TEST(ElResidualGeneral, IncludesForces) {
  std::mt19937_64 rng(131);
  const auto model = testing::double_pendulum();
  const ForceModel forces([](double, const SystemState& st) {
    return std::vector<Vec3>{Vec3(0.3, -0.2, 0.5), st.points[1].cross(e1)};
  });
  const auto s = testing::random_state(2, Representation::Velocity, rng);
  const auto qdd = el_accel_qdot(model, forces, s).second;
  const auto f = forces(0.0, s);
  for (const auto& r : el_residual_general(lagrangian_function(model), s, qdd, f)) EXPECT_LE(r.norm(), 1e-5);
  double unbalanced = 0.0;
  for (const auto& r : el_residual_general(lagrangian_function(model), s, qdd)) unbalanced = std::max(unbalanced, r.norm());
  EXPECT_GE(unbalanced, 1e-2);
}

TEST(ElResidualGeneral, WrongAccelerationIsDetected) {
  std::mt19937_64 rng(137);
  const auto model = testing::double_pendulum();
  const auto s = testing::random_state(2, Representation::Velocity, rng);
  const std::vector<Vec3> wrong{testing::gaussian(rng), testing::gaussian(rng)};
  double worst = 0.0;
  for (const auto& r : el_residual_general(lagrangian_function(model), s, wrong)) worst = std::max(worst, r.norm());
  EXPECT_GE(worst, 1e-2);
}

TEST(ElResidualGeneral, NormalMomentumTermsAreProjectedOut) {
  // L' = L + c (e1.q2)(q1.qd1) shifts dL/dqd1 by a multiple of q1; the extra
  // terms of the residual for link 1 are along q1 and the rest vanish on
  // tangent velocities.
  std::mt19937_64 rng(139);
  const auto model = testing::double_pendulum();
  const auto base = lagrangian_function(model);
  const LagrangianFn shifted = [base](Configuration q, std::span<const Vec3> qd) {
    return base(q, qd) + 0.7 * q[1].x() * q[0].dot(qd[0]);
  };
  for (int k = 0; k < 10; ++k) {
    const auto s = testing::random_state(2, Representation::Velocity, rng);
    const auto qdd = el_accel_qdot(model, kNoForces, s).second;
    const auto a = el_residual_general(base, s, qdd);
    const auto b = el_residual_general(shifted, s, qdd);
    EXPECT_LE(testing::max_distance(a, b), 1e-5);
  }
}

}  // namespace
}  // namespace spheredyn

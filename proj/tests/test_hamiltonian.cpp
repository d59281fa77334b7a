#include <gtest/gtest.h>

#include "spheredyn/errors.hpp"
#include "spheredyn/hamiltonian.hpp"
#include "spheredyn/integrator.hpp"
#include "spheredyn/lagrangian.hpp"
#include "support/test_support.hpp"

namespace spheredyn {
namespace {

using testing::e1;
using testing::e2;
using testing::e3;

const ForceModel kNoForces;

std::vector<QuadraticModel> models() { return {testing::double_pendulum(), testing::varying_inertia_model()}; }

TEST(LegendreMu, ScalarCase) {
  const auto model = spherical_pendulum(2.0, 1.0, 9.81);
  const auto mu = legendre_mu(model, testing::make_state(Representation::Velocity, {e3}, {Vec3(0.3, 0, 0)}));
  EXPECT_EQ(mu.rep, Representation::MomentumMu);
  EXPECT_LE((mu.companions[0] - Vec3(0.6, 0, 0)).norm(), 1e-15);
  const auto zero = legendre_mu(model, testing::make_state(Representation::Velocity, {e3}, {Vec3::Zero()}));
  EXPECT_EQ(zero.companions[0], Vec3::Zero());
  const auto back = inverse_legendre_mu(model, mu);
  EXPECT_LE((back.companions[0] - Vec3(0.3, 0, 0)).norm(), 1e-15);
}

TEST(LegendreMu, RoundTrip) {
  std::mt19937_64 rng(31);
  for (const auto& model : models()) {
    for (int k = 0; k < 200; ++k) {
      const auto v = testing::random_state(2, Representation::Velocity, rng);
      const auto mu = legendre_mu(model, v);
      for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(mu.companions[i].dot(mu.points[i]), 0.0, 1e-13);
      EXPECT_LE(testing::max_distance(inverse_legendre_mu(model, mu).companions, v.companions), 1e-10);
    }
  }
}

TEST(LegendrePi, ScalarCase) {
  const auto model = spherical_pendulum(3.0, 1.0, 9.81);
  const auto pi = legendre_pi(model, testing::make_state(Representation::Omega, {e1}, {Vec3(0, 0.5, 0)}));
  EXPECT_LE((pi.companions[0] - Vec3(0, 1.5, 0)).norm(), 1e-15);
  const auto zero = legendre_pi(model, testing::make_state(Representation::Omega, {e1}, {Vec3::Zero()}));
  EXPECT_EQ(zero.companions[0], Vec3::Zero());
}

TEST(LegendrePi, RoundTripAndRelationToMu) {
  std::mt19937_64 rng(37);
  for (const auto& model : models()) {
    for (int k = 0; k < 200; ++k) {
      const auto w = testing::random_state(2, Representation::Omega, rng);
      const auto pi = legendre_pi(model, w);
      EXPECT_LE(testing::max_distance(inverse_legendre_pi(model, pi).companions, w.companions), 1e-10);
      // pi_i = q_i x mu_i for the same motion.
      const auto mu = legendre_mu(model, to_velocity(w));
      for (std::size_t i = 0; i < 2; ++i)
        EXPECT_LE((pi.companions[i] - w.points[i].cross(mu.companions[i])).norm(), 1e-12);
    }
  }
}

TEST(ConvertState, AllRoutesAgree) {
  std::mt19937_64 rng(41);
  const auto model = testing::varying_inertia_model();
  const auto w = testing::random_state(2, Representation::Omega, rng);
  for (auto rep : {Representation::Velocity, Representation::MomentumMu, Representation::MomentumPi}) {
    const auto there = convert_state(model, w, rep);
    EXPECT_EQ(there.rep, rep);
    EXPECT_LE(testing::max_distance(convert_state(model, there, Representation::Omega).companions, w.companions),
              1e-12);
  }
}

TEST(Hamiltonian, HangingDoublePendulum) {
  const auto model = testing::double_pendulum(10.0);
  const auto mu = testing::make_state(Representation::MomentumMu, {-e3, -e3}, {Vec3::Zero(), Vec3::Zero()});
  EXPECT_DOUBLE_EQ(hamiltonian_mu(model, mu), -30.0);
  auto pi = mu;
  pi.rep = Representation::MomentumPi;
  EXPECT_DOUBLE_EQ(hamiltonian_pi(model, pi), -30.0);
}

TEST(Hamiltonian, ZeroMomentaGivePotential) {
  std::mt19937_64 rng(43);
  const auto model = testing::varying_inertia_model();
  auto s = testing::random_state(2, Representation::MomentumMu, rng);
  s.companions.assign(2, Vec3::Zero());
  EXPECT_DOUBLE_EQ(hamiltonian_mu(model, s), model.potential(s.points));
}

TEST(Hamiltonian, IsLegendreTransformOfLagrangian) {
  std::mt19937_64 rng(47);
  for (const auto& model : models()) {
    for (int k = 0; k < 50; ++k) {
      const auto v = testing::random_state(2, Representation::Velocity, rng);
      const auto mu = legendre_mu(model, v);
      double pairing = 0.0;
      for (std::size_t i = 0; i < 2; ++i) pairing += mu.companions[i].dot(v.companions[i]);
      EXPECT_NEAR(hamiltonian_mu(model, mu), pairing - lagrangian_value(model, v).value(), 1e-10);

      const auto w = to_omega(v);
      const auto pi = legendre_pi(model, w);
      pairing = 0.0;
      for (std::size_t i = 0; i < 2; ++i) pairing += pi.companions[i].dot(w.companions[i]);
      EXPECT_NEAR(hamiltonian_pi(model, pi), pairing - lagrangian_value(model, w).value(), 1e-10);
    }
  }
}

TEST(HamRhs, HangingEquilibriumIsAtRest) {
  const auto model = testing::double_pendulum();
  for (auto rep : {Representation::MomentumMu, Representation::MomentumPi}) {
    const auto s = testing::make_state(rep, {-e3, -e3}, {Vec3::Zero(), Vec3::Zero()});
    const auto r = rep == Representation::MomentumMu ? ham_rhs_mu(model, kNoForces, s) : ham_rhs_pi(model, kNoForces, s);
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_LE(r.qdot[i].norm(), 1e-14);
      EXPECT_LE(r.pdot[i].norm(), 1e-14);
    }
  }
}

TEST(HamRhs, QdotIsInverseLegendre) {
  std::mt19937_64 rng(53);
  for (const auto& model : models()) {
    const auto v = testing::random_state(2, Representation::Velocity, rng);
    EXPECT_LE(testing::max_distance(ham_rhs_mu(model, kNoForces, legendre_mu(model, v)).qdot, v.companions), 1e-12);
    const auto w = to_omega(v);
    EXPECT_LE(testing::max_distance(ham_rhs_pi(model, kNoForces, legendre_pi(model, w)).qdot, v.companions), 1e-12);
  }
}

TEST(HamRhs, MuRateMatchesDifferentiatedLegendreMap) {
  // mu(t) = legendre_mu(q(t), qdot(t)) along a short Euler-Lagrange solve,
  // differentiated by central differences in time.
  std::mt19937_64 rng(59);
  const double h = 1e-4;
  for (const auto& model : models()) {
    for (int k = 0; k < 5; ++k) {
      const auto v = testing::random_state(2, Representation::Velocity, rng);
      const auto path = integrate(Formulation::Qdot, model, kNoForces, v, {Method::RK4, h / 20, 2 * h, Repair::None});
      const auto& before = path.samples.front();
      const auto& middle = path.samples[path.size() / 2];
      const auto& after = path.samples.back();
      const auto mu_before = legendre_mu(model, before).companions;
      const auto mu_after = legendre_mu(model, after).companions;
      const auto rates = ham_rhs_mu(model, kNoForces, legendre_mu(model, middle));
      for (std::size_t i = 0; i < 2; ++i)
        EXPECT_LE(((mu_after[i] - mu_before[i]) / (2 * h) - rates.pdot[i]).norm(), 1e-6);
    }
  }
}

TEST(HamRhs, PiRateMatchesDifferentiatedLegendreMap) {
  std::mt19937_64 rng(61);
  const double h = 1e-4;
  for (const auto& model : models()) {
    const auto w = testing::random_state(2, Representation::Omega, rng);
    const auto path = integrate(Formulation::Omega, model, kNoForces, w, {Method::RK4, h / 20, 2 * h, Repair::None});
    const auto pi_before = legendre_pi(model, path.samples.front()).companions;
    const auto pi_after = legendre_pi(model, path.samples.back()).companions;
    const auto rates = ham_rhs_pi(model, kNoForces, legendre_pi(model, path.samples[path.size() / 2]));
    for (std::size_t i = 0; i < 2; ++i) EXPECT_LE(((pi_after[i] - pi_before[i]) / (2 * h) - rates.pdot[i]).norm(), 1e-6);
  }
}

TEST(HamRhs, FreeSphereConservesPi) {
  const auto model = spherical_pendulum(1.5, 0.8, 0.0);
  std::mt19937_64 rng(67);
  for (int k = 0; k < 10; ++k) {
    const auto s = testing::random_state(1, Representation::MomentumPi, rng);
    const auto r = ham_rhs_pi(model, kNoForces, s);
    EXPECT_LE(r.pdot[0].norm(), 1e-14);
    EXPECT_NEAR(r.qdot[0].dot(s.companions[0]), 0.0, 1e-14);
  }
}

TEST(DHdq, SingleSphereKineticPartVanishes) {
  const auto model = spherical_pendulum(2.0, 1.5, 9.81);
  std::mt19937_64 rng(71);
  const auto s = testing::random_state(1, Representation::MomentumMu, rng);
  for (auto method : {GradientMethod::FiniteDifference, GradientMethod::Analytic})
    EXPECT_LE((dH_dq(model, s, 0, method) - model.potential_grad(s.points, 0)).norm(), 1e-9);

  const auto flat = spherical_pendulum(2.0, 1.5, 0.0);
  EXPECT_LE(dH_dq(flat, s, 0).norm(), 1e-9);
}

TEST(DHdq, FiniteDifferenceConvergesQuadratically) {
  std::mt19937_64 rng(73);
  const auto model = testing::double_pendulum();
  for (auto rep : {Representation::MomentumMu, Representation::MomentumPi}) {
    const auto s = convert_state(model, testing::random_state(2, Representation::Omega, rng), rep);
    const Vec3 exact = dH_dq(model, s, 1, GradientMethod::Analytic);
    const double e1 = (dH_dq(model, s, 1, GradientMethod::FiniteDifference, 2e-2) - exact).norm();
    const double e2 = (dH_dq(model, s, 1, GradientMethod::FiniteDifference, 1e-2) - exact).norm();
    EXPECT_NEAR(e1 / e2, 4.0, 0.2);
  }
}

TEST(DHdq, AnalyticMatchesFiniteDifference) {
  std::mt19937_64 rng(79);
  for (const auto& model : models()) {
    for (auto rep : {Representation::MomentumMu, Representation::MomentumPi}) {
      for (int k = 0; k < 20; ++k) {
        const auto s = convert_state(model, testing::random_state(2, Representation::Omega, rng), rep);
        for (std::size_t i = 0; i < 2; ++i)
          EXPECT_LE((dH_dq(model, s, i, GradientMethod::Analytic) - dH_dq(model, s, i, GradientMethod::FiniteDifference))
                        .norm(),
                    1e-7);
      }
    }
  }
}

TEST(InverseInertia, RejectsVelocityRepresentations) {
  const auto model = testing::double_pendulum();
  EXPECT_THROW(InverseInertia(model, Representation::Velocity), InvalidParams);
  const auto v = testing::make_state(Representation::Velocity, {e3, e3}, {e1, e2});
  EXPECT_THROW(hamiltonian_mu(model, v), InvalidParams);
}

}  // namespace
}  // namespace spheredyn

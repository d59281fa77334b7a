#include <benchmark/benchmark.h>

#include <cmath>

#include "spheredyn/hamiltonian.hpp"
#include "spheredyn/integrator.hpp"
#include "spheredyn/lagrangian.hpp"
#include "spheredyn/model_library.hpp"

namespace {

using namespace spheredyn;

SystemState chain_state(std::size_t n) {
  SystemState s;
  s.rep = Representation::Omega;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = 0.3 + 0.2 * static_cast<double>(i);
    const Vec3 q(std::sin(a), 0.1 * std::cos(a), -std::cos(a));
    s.points.push_back(q.normalized());
    const Vec3 w(0.4, 0.5 + 0.1 * static_cast<double>(i), 0.3);
    s.companions.push_back(w - s.points.back().dot(w) * s.points.back());
  }
  return s;
}

QuadraticModel chain(std::size_t n) {
  return chain_pendulum({std::vector<double>(n, 1.0), std::vector<double>(n, 1.0), 9.81});
}

void BM_ElAccelQdot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto model = chain(n);
  const auto s = to_velocity(chain_state(n));
  for (auto _ : state) benchmark::DoNotOptimize(el_accel_qdot(model, ForceModel(), s));
}
BENCHMARK(BM_ElAccelQdot)->Arg(2)->Arg(8)->Arg(32);

void BM_ElAccelOmega(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto model = chain(n);
  const auto s = chain_state(n);
  for (auto _ : state) benchmark::DoNotOptimize(el_accel_omega(model, ForceModel(), s));
}
BENCHMARK(BM_ElAccelOmega)->Arg(2)->Arg(8)->Arg(32);

void BM_HamRhs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const bool pi = state.range(1) != 0;
  EvalOptions options;
  options.gradient = state.range(2) != 0 ? GradientMethod::Analytic : GradientMethod::FiniteDifference;
  const auto model = chain(n);
  const auto s = convert_state(model, chain_state(n), pi ? Representation::MomentumPi : Representation::MomentumMu);
  for (auto _ : state) {
    if (pi)
      benchmark::DoNotOptimize(ham_rhs_pi(model, ForceModel(), s, options));
    else
      benchmark::DoNotOptimize(ham_rhs_mu(model, ForceModel(), s, options));
  }
}
BENCHMARK(BM_HamRhs)->ArgsProduct({{2, 8}, {0, 1}, {0, 1}})->ArgNames({"n", "pi", "analytic"});

void BM_Integrate(benchmark::State& state) {
  const auto formulation = kAllFormulations[static_cast<std::size_t>(state.range(0))];
  const auto model = chain(2);
  const auto s = convert_state(model, chain_state(2), representation_of(formulation));
  for (auto _ : state) benchmark::DoNotOptimize(integrate(formulation, model, ForceModel(), s, {Method::RK4, 1e-3, 1.0}));
  state.SetLabel(std::string(to_string(formulation)));
}
BENCHMARK(BM_Integrate)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

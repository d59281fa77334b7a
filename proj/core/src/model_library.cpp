#include "spheredyn/model_library.hpp"

#include <cmath>
#include <sstream>

#include "spheredyn/errors.hpp"

namespace spheredyn {

void ChainPendulumParams::validate() const {
  std::ostringstream msg;
  if (masses.empty()) msg << "chain pendulum needs at least one link";
  else if (lengths.size() != masses.size())
    msg << "chain pendulum has " << masses.size() << " masses but " << lengths.size() << " lengths";
  else if (!(gravity >= 0.0) || !std::isfinite(gravity)) msg << "gravity must be non-negative";
  else {
    for (std::size_t i = 0; i < masses.size(); ++i) {
      if (!(masses[i] > 0.0) || !std::isfinite(masses[i])) {
        msg << "mass of link " << i + 1 << " must be positive";
        break;
      }
      if (!(lengths[i] > 0.0) || !std::isfinite(lengths[i])) {
        msg << "length of link " << i + 1 << " must be positive";
        break;
      }
    }
  }
  if (!msg.str().empty()) throw InvalidParams(msg.str());
}

Eigen::MatrixXd chain_inertia_constants(const std::vector<double>& masses) {
  const auto n = static_cast<Eigen::Index>(masses.size());
  Eigen::VectorXd tail(n);
  double sum = 0.0;
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    sum += masses[static_cast<std::size_t>(k)];
    tail(k) = sum;
  }
  Eigen::MatrixXd big_m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) big_m(i, j) = tail(std::max(i, j));
  return big_m;
}

QuadraticModel chain_pendulum(const ChainPendulumParams& params) {
  params.validate();
  const std::size_t n = params.size();
  const Eigen::MatrixXd big_m = chain_inertia_constants(params.masses);
  const Eigen::Map<const Eigen::VectorXd> l(params.lengths.data(), static_cast<Eigen::Index>(n));
  const Eigen::MatrixXd inertia = big_m.cwiseProduct(l * l.transpose());

  // Weight of everything hanging from joint i, times l_i g.
  std::vector<double> gravity_weight(n);
  for (std::size_t i = 0; i < n; ++i)
    gravity_weight[i] = big_m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) * params.gravity *
                        params.lengths[i];

  auto inertia_fn = [inertia](Configuration) { return inertia; };
  auto inertia_grad_fn = [n](Configuration, std::size_t) { return InertiaGradient(n); };
  auto potential_fn = [gravity_weight](Configuration q) {
    double u = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) u += gravity_weight[i] * q[i].z();
    return u;
  };
  auto potential_grad_fn = [gravity_weight](Configuration, std::size_t i) {
    return Vec3(0.0, 0.0, gravity_weight[i]);
  };
  return QuadraticModel(n, inertia_fn, potential_fn, inertia_grad_fn, potential_grad_fn);
}

QuadraticModel spherical_pendulum(double mass, double length, double gravity) {
  return chain_pendulum({{mass}, {length}, gravity});
}

ForceModel chain_forces(const ChainForceParams& params, const std::vector<double>& lengths) {
  if (!params.tau && !params.d) return ForceModel();
  return ForceModel([params, lengths](double t, const SystemState& state) {
    std::vector<Vec3> f(state.size(), Vec3::Zero());
    if (params.d) {
      const Vec3 d = params.d(t);
      for (std::size_t j = 0; j < state.size(); ++j) f[j] = lengths[j] * state.points[j].cross(d);
    }
    if (params.tau && !f.empty()) f[0] += params.tau(t);
    return f;
  });
}

std::vector<Vec3> tip_positions(const ChainPendulumParams& params, Configuration q) {
  std::vector<Vec3> x(q.size());
  Vec3 acc = Vec3::Zero();
  for (std::size_t i = 0; i < q.size(); ++i) {
    acc += params.lengths[i] * q[i];
    x[i] = acc;
  }
  return x;
}

}  // namespace spheredyn

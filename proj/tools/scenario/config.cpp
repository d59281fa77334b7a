#include "config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "spheredyn/errors.hpp"
#include "trajectory_io.hpp"

namespace spheredyn::scenario {

ConfigError::ConfigError(const std::string& message, int line) : std::runtime_error(message), line_(line) {}

QuadraticModel ScenarioConfig::build_model() const { return chain_pendulum(model); }

ForceModel ScenarioConfig::build_forces() const {
  if (unforced()) return ForceModel();
  ChainForceParams params;
  const Vec3 tau_value = tau;
  const Vec3 d_value = d;
  if (!tau.isZero(0.0)) params.tau = [tau_value](double) { return tau_value; };
  if (!d.isZero(0.0)) params.d = [d_value](double) { return d_value; };
  return chain_forces(params, model.lengths);
}

namespace {

int line_of(const YAML::Node& node) { return node.Mark().line + 1; }

[[noreturn]] void fail(const YAML::Node& node, const std::string& message) {
  throw ConfigError(message, line_of(node));
}

void check_keys(const YAML::Node& section, const std::string& name, std::initializer_list<const char*> allowed) {
  if (!section.IsMap()) fail(section, name + ": expected a mapping");
  for (const auto& entry : section) {
    const auto key = entry.first.as<std::string>();
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) fail(entry.first, "unknown key '" + (name.empty() ? key : name + "." + key) + "'");
  }
}

YAML::Node require(const YAML::Node& section, const std::string& section_name, const char* key) {
  YAML::Node node = section[key];
  if (!node) {
    const std::string full = section_name.empty() ? key : section_name + "." + key;
    fail(section, "missing required key '" + full + "'");
  }
  return node;
}

double as_number(const YAML::Node& node, const std::string& name) {
  if (!node.IsScalar()) fail(node, name + ": expected a number");
  double v = 0.0;
  try {
    v = node.as<double>();
  } catch (const YAML::BadConversion&) {
    fail(node, name + ": expected a number, got '" + node.Scalar() + "'");
  }
  if (!std::isfinite(v)) fail(node, name + ": must be finite");
  return v;
}

double as_positive(const YAML::Node& node, const std::string& name) {
  const double v = as_number(node, name);
  if (!(v > 0.0)) fail(node, name + ": must be positive");
  return v;
}

std::uint64_t as_count(const YAML::Node& node, const std::string& name) {
  if (!node.IsScalar()) fail(node, name + ": expected a non-negative integer");
  try {
    return node.as<std::uint64_t>();
  } catch (const YAML::BadConversion&) {
    fail(node, name + ": expected a non-negative integer, got '" + node.Scalar() + "'");
  }
}

std::string as_string(const YAML::Node& node, const std::string& name) {
  if (!node.IsScalar()) fail(node, name + ": expected a string");
  return node.Scalar();
}

bool as_bool(const YAML::Node& node, const std::string& name) {
  if (!node.IsScalar()) fail(node, name + ": expected true or false");
  try {
    return node.as<bool>();
  } catch (const YAML::BadConversion&) {
    fail(node, name + ": expected true or false, got '" + node.Scalar() + "'");
  }
}

Vec3 as_vec3(const YAML::Node& node, const std::string& name) {
  if (!node.IsSequence() || node.size() != 3) fail(node, name + ": expected a list of three numbers");
  return {as_number(node[0], name + "[x]"), as_number(node[1], name + "[y]"), as_number(node[2], name + "[z]")};
}

std::vector<double> as_list(const YAML::Node& node, const std::string& name, std::size_t n) {
  if (!node.IsSequence()) fail(node, name + ": expected a list");
  if (node.size() != n)
    fail(node, name + ": expected " + std::to_string(n) + " entries, got " + std::to_string(node.size()));
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(as_number(node[i], name + "[" + std::to_string(i + 1) + "]"));
  return out;
}

void parse_model(const YAML::Node& section, ScenarioConfig& cfg) {
  check_keys(section, "model", {"kind", "n", "masses", "lengths", "gravity"});
  const YAML::Node kind = require(section, "model", "kind");
  if (as_string(kind, "model.kind") != "chain_pendulum")
    fail(kind, "model.kind: unsupported model '" + kind.Scalar() + "' (expected chain_pendulum)");
  const YAML::Node n_node = require(section, "model", "n");
  const auto n = static_cast<std::size_t>(as_count(n_node, "model.n"));
  if (n == 0) fail(n_node, "model.n: must be at least 1");

  cfg.model.masses = as_list(require(section, "model", "masses"), "model.masses", n);
  cfg.model.lengths = as_list(require(section, "model", "lengths"), "model.lengths", n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(cfg.model.masses[i] > 0.0)) fail(section["masses"][i], "model.masses[" + std::to_string(i + 1) + "]: must be positive");
    if (!(cfg.model.lengths[i] > 0.0)) fail(section["lengths"][i], "model.lengths[" + std::to_string(i + 1) + "]: must be positive");
  }
  if (const YAML::Node g = section["gravity"]) {
    cfg.model.gravity = as_number(g, "model.gravity");
    if (cfg.model.gravity < 0.0) fail(g, "model.gravity: must be non-negative");
  }
}

void parse_forces(const YAML::Node& section, ScenarioConfig& cfg) {
  check_keys(section, "forces", {"tau", "d"});
  if (const YAML::Node t = section["tau"]) cfg.tau = as_vec3(t, "forces.tau");
  if (const YAML::Node d = section["d"]) cfg.d = as_vec3(d, "forces.d");
}

void parse_initial(const YAML::Node& section, ScenarioConfig& cfg) {
  check_keys(section, "initial", {"q", "omega", "repair"});
  if (const YAML::Node r = section["repair"]) cfg.repair_initial = as_bool(r, "initial.repair");
  const std::size_t n = cfg.model.size();
  const YAML::Node q_node = require(section, "initial", "q");
  const YAML::Node w_node = require(section, "initial", "omega");
  for (const auto& [node, name] : {std::pair{q_node, "initial.q"}, std::pair{w_node, "initial.omega"}}) {
    if (!node.IsSequence()) fail(node, std::string(name) + ": expected a list of 3-vectors");
    if (node.size() != n)
      fail(node, std::string(name) + ": expected " + std::to_string(n) + " entries (one per link), got " +
                     std::to_string(node.size()));
  }

  SystemState& s = cfg.initial;
  s.rep = Representation::Omega;
  s.time = 0.0;
  s.points.resize(n);
  s.companions.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string idx = "[" + std::to_string(i + 1) + "]";
    Vec3 q = as_vec3(q_node[i], "initial.q" + idx);
    const double norm = q.norm();
    if (!(norm > 0.0)) fail(q_node[i], "initial.q" + idx + ": link " + std::to_string(i + 1) + " direction is zero");
    if (std::abs(norm - 1.0) > kUnitNormTolerance) {
      if (!cfg.repair_initial) {
        std::ostringstream msg;
        msg << "initial.q" << idx << ": link " << i + 1 << " has norm " << norm
            << ", expected a unit vector (set initial.repair: true to normalize)";
        fail(q_node[i], msg.str());
      }
      q /= norm;
    }
    Vec3 w = as_vec3(w_node[i], "initial.omega" + idx);
    const double tangency = std::abs(q.dot(w)) / std::max(1.0, w.norm());
    if (tangency > kTangencyTolerance) {
      if (!cfg.repair_initial) {
        std::ostringstream msg;
        msg << "initial.omega" << idx << ": link " << i + 1 << " angular velocity has q.omega = " << q.dot(w)
            << ", expected it orthogonal to q (set initial.repair: true to project)";
        fail(w_node[i], msg.str());
      }
      w -= q.dot(w) * q;
    }
    s.points[i] = q;
    s.companions[i] = w;
  }
}

void parse_run(const YAML::Node& section, ScenarioConfig& cfg) {
  check_keys(section, "run", {"formulation", "method", "step", "horizon", "repair", "gradient", "trajectory", "summary"});
  const YAML::Node f = require(section, "run", "formulation");
  const auto formulation = parse_formulation(as_string(f, "run.formulation"));
  if (!formulation) fail(f, "run.formulation: expected one of qdot, omega, mu, pi; got '" + f.Scalar() + "'");
  cfg.formulation = *formulation;

  if (const YAML::Node m = section["method"]) {
    const auto method = parse_method(as_string(m, "run.method"));
    if (!method) fail(m, "run.method: expected one of rk4, heun, euler; got '" + m.Scalar() + "'");
    cfg.integrator.method = *method;
  }
  const YAML::Node step = require(section, "run", "step");
  const YAML::Node horizon = require(section, "run", "horizon");
  cfg.integrator.step = as_positive(step, "run.step");
  cfg.integrator.horizon = as_number(horizon, "run.horizon");
  if (cfg.integrator.horizon < 0.0) fail(horizon, "run.horizon: must be non-negative");
  if (cfg.integrator.horizon > 0.0 && cfg.integrator.step > cfg.integrator.horizon) {
    std::ostringstream msg;
    msg << "run.step: " << cfg.integrator.step << " exceeds run.horizon " << cfg.integrator.horizon;
    fail(step, msg.str());
  }
  if (const YAML::Node r = section["repair"]) {
    const std::string v = as_string(r, "run.repair");
    if (v == "project") cfg.integrator.repair = Repair::Project;
    else if (v == "none") cfg.integrator.repair = Repair::None;
    else fail(r, "run.repair: expected project or none; got '" + v + "'");
  }
  if (const YAML::Node g = section["gradient"]) {
    const std::string v = as_string(g, "run.gradient");
    if (v == "analytic") cfg.gradient = GradientMethod::Analytic;
    else if (v == "finite_difference") cfg.gradient = GradientMethod::FiniteDifference;
    else fail(g, "run.gradient: expected analytic or finite_difference; got '" + v + "'");
  }
  if (const YAML::Node t = section["trajectory"]) cfg.trajectory_path = as_string(t, "run.trajectory");
  if (const YAML::Node s = section["summary"]) cfg.summary_path = as_string(s, "run.summary");
  cfg.compare_stem = cfg.trajectory_path.stem().string();
}

void parse_compare(const YAML::Node& section, ScenarioConfig& cfg) {
  check_keys(section, "compare", {"divergence_bound", "stem"});
  if (const YAML::Node b = section["divergence_bound"]) cfg.divergence_bound = as_positive(b, "compare.divergence_bound");
  if (const YAML::Node s = section["stem"]) cfg.compare_stem = as_string(s, "compare.stem");
}

void parse_check(const YAML::Node& section, ScenarioConfig& cfg) {
  check_keys(section, "check", {"seed", "samples", "identity_samples", "curves", "dalembert_horizon"});
  if (const YAML::Node v = section["seed"]) cfg.check.seed = as_count(v, "check.seed");
  if (const YAML::Node v = section["samples"]) cfg.check.samples = as_count(v, "check.samples");
  if (const YAML::Node v = section["identity_samples"]) cfg.check.identity_samples = as_count(v, "check.identity_samples");
  if (const YAML::Node v = section["curves"]) cfg.check.curves = as_count(v, "check.curves");
  if (const YAML::Node v = section["dalembert_horizon"])
    cfg.check.dalembert_horizon = as_positive(v, "check.dalembert_horizon");
}

void parse_tolerances(const YAML::Node& section, ScenarioConfig& cfg) {
  check_keys(section, "tolerances", {"hat_identity", "kinematics", "legendre", "dalembert"});
  Tolerances& t = cfg.tolerances;
  if (const YAML::Node v = section["hat_identity"]) t.hat_identity = as_positive(v, "tolerances.hat_identity");
  if (const YAML::Node v = section["kinematics"]) t.kinematics = as_positive(v, "tolerances.kinematics");
  if (const YAML::Node v = section["legendre"]) t.legendre = as_positive(v, "tolerances.legendre");
  if (const YAML::Node v = section["dalembert"]) t.dalembert = as_positive(v, "tolerances.dalembert");
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("malformed YAML: " + e.msg, e.mark.line + 1);
  }
  if (!root.IsMap()) throw ConfigError("top level must be a mapping", root ? line_of(root) : 0);

  ScenarioConfig cfg;
  cfg.source = source;
  try {
    check_keys(root, "", {"schema_version", "model", "forces", "initial", "run", "compare", "check", "tolerances"});
    const YAML::Node version = require(root, "", "schema_version");
    if (as_count(version, "schema_version") != kSchemaVersion)
      fail(version, "schema_version: unsupported version " + version.Scalar() + " (expected " +
                        std::to_string(kSchemaVersion) + ")");
    parse_model(require(root, "", "model"), cfg);
    if (const YAML::Node f = root["forces"]) parse_forces(f, cfg);
    parse_initial(require(root, "", "initial"), cfg);
    parse_run(require(root, "", "run"), cfg);
    if (const YAML::Node c = root["compare"]) parse_compare(c, cfg);
    if (const YAML::Node c = root["check"]) parse_check(c, cfg);
    if (const YAML::Node t = root["tolerances"]) parse_tolerances(t, cfg);
  } catch (const YAML::Exception& e) {
    throw ConfigError(e.msg, e.mark.line + 1);
  }
  try {
    cfg.model.validate();
    cfg.integrator.validate();
  } catch (const InvalidParams& e) {
    throw ConfigError(e.what(), 0);
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading config file " + path.string());
  return parse_config(buffer.str(), path);
}

}  // namespace spheredyn::scenario

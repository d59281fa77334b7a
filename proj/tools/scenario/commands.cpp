#include "commands.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>

#include <nlohmann/json.hpp>

#include "checks.hpp"
#include "config.hpp"
#include "spheredyn/errors.hpp"
#include "spheredyn/hamiltonian.hpp"
#include "spheredyn/variational.hpp"
#include "trajectory_io.hpp"

namespace spheredyn::scenario {

namespace fs = std::filesystem;
using json = nlohmann::json;

fs::path resolve_output_dir(const fs::path& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return fs::current_path();
}

namespace {

std::ostream& out_of(const CommandOptions& o) { return o.out ? *o.out : std::cout; }
std::ostream& err_of(const CommandOptions& o) { return o.err ? *o.err : std::cerr; }

fs::path output_path(const fs::path& base, const fs::path& configured) {
  return configured.is_absolute() ? configured : base / configured;
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json state_json(const SystemState& s) {
  json q = json::array(), w = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    q.push_back(vec_json(s.points[i]));
    w.push_back(vec_json(s.companions[i]));
  }
  return {{"time", s.time}, {"representation", std::string(to_string(s.rep))}, {"q", q}, {"companion", w}};
}

json run_json(const ScenarioConfig& cfg, Formulation formulation) {
  return {{"formulation", std::string(to_string(formulation))},
          {"method", std::string(to_string(cfg.integrator.method))},
          {"step", cfg.integrator.step},
          {"horizon", cfg.integrator.horizon},
          {"repair", cfg.integrator.repair == Repair::Project ? "project" : "none"},
          {"links", cfg.model.size()}};
}

json diagnostics_json(const Trajectory& t) {
  const DiagnosticsSummary d = diagnostics_report(t);
  return {{"samples", d.samples},
          {"energy",
           {{"initial", d.initial_energy},
            {"final", t.empty() ? 0.0 : t.diagnostics.back().energy},
            {"max_drift", d.max_energy_drift},
            {"mean_drift", d.mean_energy_drift}}},
          {"max_norm_error", d.max_norm_error},
          {"max_tangency_error", d.max_tangency_error}};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Loads the config and maps every failure class onto its exit code.
int guarded(const fs::path& config_path, const CommandOptions& options,
            const std::function<int(const ScenarioConfig&)>& body) {
  std::ostream& err = err_of(options);
  try {
    return body(load_config(config_path));
  } catch (const ConfigError& e) {
    err << config_path.string();
    if (e.line() > 0) err << ':' << e.line();
    err << ": error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalFailure& e) {
    err << "numerical failure";
    if (e.time()) err << " at t=" << format_short(*e.time());
    err << ": " << e.what() << '\n';
    return kExitNumerical;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << config_path.string() << ": error: " << e.what() << '\n';
    return kExitConfig;
  }
}

void write_json(StagedFile& file, const json& doc) { file.stream() << doc.dump(2) << '\n'; }

}  // namespace

int cmd_run(const fs::path& config_path, const CommandOptions& options) {
  return guarded(config_path, options, [&](const ScenarioConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const QuadraticModel model = cfg.build_model();
    const SystemState initial = convert_state(model, cfg.initial, representation_of(cfg.formulation));
    const Trajectory trajectory =
        integrate(cfg.formulation, model, cfg.build_forces(), initial, cfg.integrator, cfg.gradient);
    const double wall = seconds_since(start);

    const fs::path base = resolve_output_dir(options.output_dir);
    StagedFile csv(output_path(base, cfg.trajectory_path));
    write_trajectory(csv.stream(), trajectory);
    StagedFile summary(output_path(base, cfg.summary_path));
    json doc = {{"command", "run"},
                {"config", config_path.string()},
                {"run", run_json(cfg, cfg.formulation)},
                {"terminal_state", state_json(trajectory.samples.back())},
                {"diagnostics", diagnostics_json(trajectory)},
                {"trajectory", csv.target().string()},
                {"wall_time_s", wall}};
    write_json(summary, doc);
    csv.commit();
    summary.commit();

    if (!options.quiet) {
      const DiagnosticsSummary d = diagnostics_report(trajectory);
      out_of(options) << "wrote " << trajectory.size() << " samples to " << csv.target().string() << '\n'
                      << "energy drift " << format_short(d.max_energy_drift) << ", max norm error "
                      << format_short(d.max_norm_error) << ", max tangency error "
                      << format_short(d.max_tangency_error) << '\n';
    }
    return kExitOk;
  });
}

int cmd_check(const fs::path& config_path, const CommandOptions& options) {
  return guarded(config_path, options, [&](const ScenarioConfig& cfg) {
    const std::uint64_t seed = options.seed.value_or(cfg.check.seed);
    const std::vector<CheckResult> results = run_checks(cfg, seed);
    bool all = true;
    std::ostream& out = out_of(options);
    for (const auto& r : results) {
      all = all && r.passed;
      if (options.quiet && r.passed) continue;
      out << std::left << std::setw(24) << r.name << ' ' << std::setw(10) << (r.passed ? "PASS" : "FAIL")
          << " value " << std::setw(24) << format_short(r.value) << " tolerance " << format_short(r.tolerance);
      if (!r.note.empty()) out << "  (" << r.note << ')';
      out << '\n';
    }
    if (!options.quiet) out << (all ? "all checks passed" : "some checks failed") << " (seed " << seed << ")\n";
    return all ? kExitOk : kExitCriteria;
  });
}

int cmd_compare(const fs::path& config_path, const CommandOptions& options) {
  return guarded(config_path, options, [&](const ScenarioConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const QuadraticModel model = cfg.build_model();
    const AgreementReport report =
        cross_form_agreement(model, cfg.build_forces(), cfg.initial, cfg.integrator, cfg.gradient);
    const double wall = seconds_since(start);
    const bool passed = report.max_divergence <= cfg.divergence_bound;

    const fs::path base = resolve_output_dir(options.output_dir);
    std::vector<std::unique_ptr<StagedFile>> files;
    json per_form = json::object();
    for (std::size_t k = 0; k < 4; ++k) {
      const std::string name(to_string(kAllFormulations[k]));
      auto& file = files.emplace_back(std::make_unique<StagedFile>(base / (cfg.compare_stem + "_" + name + ".csv")));
      write_trajectory(file->stream(), report.trajectories[k]);
      per_form[name] = diagnostics_json(report.trajectories[k]);
    }
    auto& divergence = files.emplace_back(std::make_unique<StagedFile>(base / (cfg.compare_stem + "_divergence.csv")));
    divergence->stream() << "t,divergence\n";
    for (std::size_t k = 0; k < report.times.size(); ++k)
      divergence->stream() << format_double(report.times[k]) << ',' << format_double(report.divergence[k]) << '\n';

    static constexpr const char* kPairs[] = {"qdot-omega", "qdot-mu", "qdot-pi", "omega-mu", "omega-pi", "mu-pi"};
    json pairs = json::object();
    for (std::size_t p = 0; p < 6; ++p) pairs[kPairs[p]] = report.pairwise[p];
    auto& summary = files.emplace_back(std::make_unique<StagedFile>(base / (cfg.compare_stem + "_compare.json")));
    write_json(*summary, {{"command", "compare"},
                          {"config", config_path.string()},
                          {"run", run_json(cfg, cfg.formulation)},
                          {"max_divergence", report.max_divergence},
                          {"divergence_bound", cfg.divergence_bound},
                          {"passed", passed},
                          {"pairwise", pairs},
                          {"formulations", per_form},
                          {"wall_time_s", wall}});
    for (auto& f : files) f->commit();

    if (!options.quiet || !passed) {
      std::ostream& out = passed ? out_of(options) : err_of(options);
      out << "max divergence " << format_short(report.max_divergence) << " (bound "
          << format_short(cfg.divergence_bound) << "): " << (passed ? "PASS" : "FAIL") << '\n';
    }
    return passed ? kExitOk : kExitCriteria;
  });
}

}  // namespace spheredyn::scenario

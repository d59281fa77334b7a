#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "scenario/commands.hpp"

namespace sc = spheredyn::scenario;

int main(int argc, char** argv) {
  CLI::App app{"Simulate and verify dynamics of chains on (S^2)^n"};
  app.require_subcommand(1);

  sc::CommandOptions options;
  std::string output_dir;
  app.add_option("--output-dir", output_dir,
                 "Directory for output files (default: $" + std::string(sc::kOutputDirEnv) + " or the current directory)");
  app.add_flag("--quiet,-q", options.quiet, "Only report failures");

  std::string config;
  auto* run = app.add_subcommand("run", "Integrate a scenario and write its trajectory and summary");
  run->add_option("config", config, "Scenario file")->required();

  std::uint64_t seed = 0;
  auto* check = app.add_subcommand("check", "Run the invariant suite against a scenario");
  check->add_option("config", config, "Scenario file")->required();
  auto* seed_opt = check->add_option("--seed", seed, "Seed for the randomized checks");

  auto* compare = app.add_subcommand("compare", "Integrate all four formulations and compare them");
  compare->add_option("config", config, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? sc::kExitOk : sc::kExitConfig;
  }

  options.output_dir = output_dir;
  if (seed_opt->count() > 0) options.seed = seed;

  if (run->parsed()) return sc::cmd_run(config, options);
  if (check->parsed()) return sc::cmd_check(config, options);
  return sc::cmd_compare(config, options);
}

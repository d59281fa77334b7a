#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace spheredyn::scenario {

/// Process exit codes of the spheredyn tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitCriteria = 4,
};

inline constexpr const char* kOutputDirEnv = "SPHEREDYN_OUTPUT_DIR";

struct CommandOptions {
  /// Base for relative output paths. Empty means: $SPHEREDYN_OUTPUT_DIR,
  /// else the current directory.
  std::filesystem::path output_dir;
  bool quiet = false;
  std::optional<std::uint64_t> seed;
  std::ostream* out = nullptr;  // defaults to std::cout
  std::ostream* err = nullptr;  // defaults to std::cerr
};

std::filesystem::path resolve_output_dir(const std::filesystem::path& flag);

/// Integrates the configured formulation; writes the trajectory CSV and a
/// JSON summary.
int cmd_run(const std::filesystem::path& config_path, const CommandOptions& options);

/// Runs the invariant suite and prints a pass/fail table. Exit 0 iff all pass.
int cmd_check(const std::filesystem::path& config_path, const CommandOptions& options);

/// Integrates all four formulations; writes one CSV each, a divergence CSV
/// and a JSON summary. Exit 0 iff the divergence stays within the bound.
int cmd_compare(const std::filesystem::path& config_path, const CommandOptions& options);

}  // namespace spheredyn::scenario

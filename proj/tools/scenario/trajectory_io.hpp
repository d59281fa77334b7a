#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "spheredyn/integrator.hpp"

namespace spheredyn::scenario {

/// File could not be read, written or parsed as a trajectory.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exactly 17 significant digits (trailing zeros dropped); parses back to
/// the same double.
std::string format_double(double value);
/// Shortest text that parses back to the same double, for messages.
std::string format_short(double value);

/// t, then q<i>_x..z and w<i>_x..z per link, then energy, max_norm_err, max_tan_err.
std::vector<std::string> trajectory_header(std::size_t n);
inline std::size_t trajectory_columns(std::size_t n) { return 1 + 6 * n + 3; }

void write_trajectory(std::ostream& out, const Trajectory& trajectory);

/// Inverse of write_trajectory. Samples get representation `rep`; throws
/// IoError on malformed input, naming the 1-based line.
Trajectory read_trajectory(std::istream& in, Representation rep);

/// Output file written to a sibling temporary and renamed into place by
/// commit(). An uncommitted file is removed on destruction, so a failed
/// command leaves no partial output behind.
class StagedFile {
 public:
  explicit StagedFile(std::filesystem::path target);
  ~StagedFile();
  StagedFile(const StagedFile&) = delete;
  StagedFile& operator=(const StagedFile&) = delete;
  StagedFile(StagedFile&&) = delete;

  std::ostream& stream() { return out_; }
  const std::filesystem::path& target() const { return target_; }
  /// Flushes and renames. Throws IoError on I/O failure.
  void commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace spheredyn::scenario

#include "trajectory_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace spheredyn::scenario {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_short(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::vector<std::string> trajectory_header(std::size_t n) {
  std::vector<std::string> cols{"t"};
  for (std::size_t i = 1; i <= n; ++i) {
    for (const char* c : {"x", "y", "z"}) cols.push_back("q" + std::to_string(i) + "_" + c);
    for (const char* c : {"x", "y", "z"}) cols.push_back("w" + std::to_string(i) + "_" + c);
  }
  cols.insert(cols.end(), {"energy", "max_norm_err", "max_tan_err"});
  return cols;
}

void write_trajectory(std::ostream& out, const Trajectory& trajectory) {
  const std::size_t n = trajectory.empty() ? 0 : trajectory.samples.front().size();
  const auto header = trajectory_header(n);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const SystemState& s = trajectory.samples[k];
    const SampleDiagnostics& d = trajectory.diagnostics[k];
    out << format_double(s.time);
    for (std::size_t i = 0; i < n; ++i) {
      for (int c = 0; c < 3; ++c) out << ',' << format_double(s.points[i][c]);
      for (int c = 0; c < 3; ++c) out << ',' << format_double(s.companions[i][c]);
    }
    out << ',' << format_double(d.energy) << ',' << format_double(d.max_norm_error) << ','
        << format_double(d.max_tangency_error) << '\n';
  }
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

}  // namespace

Trajectory read_trajectory(std::istream& in, Representation rep) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("trajectory file is empty");
  const auto header = split(line);
  if (header.size() < 4 || (header.size() - 4) % 6 != 0)
    throw IoError("line 1: unexpected trajectory header with " + std::to_string(header.size()) + " columns");
  const std::size_t n = (header.size() - 4) / 6;
  const auto expected = trajectory_header(n);
  for (std::size_t c = 0; c < expected.size(); ++c)
    if (header[c] != expected[c])
      throw IoError("line 1: column " + std::to_string(c + 1) + " should be '" + expected[c] + "'");

  Trajectory out;
  std::size_t line_no = 1;
  std::vector<double> row(expected.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != expected.size())
      throw IoError("line " + std::to_string(line_no) + ": expected " + std::to_string(expected.size()) +
                               " columns, got " + std::to_string(fields.size()));
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto res = std::from_chars(fields[c].data(), fields[c].data() + fields[c].size(), row[c]);
      if (res.ec != std::errc() || res.ptr != fields[c].data() + fields[c].size())
        throw IoError("line " + std::to_string(line_no) + ": column " + std::to_string(c + 1) +
                                 " is not a number");
    }
    SystemState s;
    s.rep = rep;
    s.time = row[0];
    s.points.resize(n);
    s.companions.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t base = 1 + 6 * i;
      s.points[i] = Vec3(row[base], row[base + 1], row[base + 2]);
      s.companions[i] = Vec3(row[base + 3], row[base + 4], row[base + 5]);
    }
    const std::size_t tail = 1 + 6 * n;
    out.samples.push_back(std::move(s));
    out.diagnostics.push_back({row[0], row[tail], row[tail + 1], row[tail + 2]});
  }
  return out;
}

StagedFile::StagedFile(std::filesystem::path target) : target_(std::move(target)) {
  temp_ = target_;
  temp_ += ".tmp";
  if (target_.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target_.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + target_.parent_path().string() + ": " + ec.message());
  }
  out_.open(temp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot open " + temp_.string() + " for writing");
}

StagedFile::~StagedFile() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(temp_, ec);
  }
}

void StagedFile::commit() {
  out_.flush();
  out_.close();
  if (!out_) throw IoError("error writing " + temp_.string());
  std::error_code ec;
  std::filesystem::rename(temp_, target_, ec);
  if (ec) throw IoError("cannot move " + temp_.string() + " to " + target_.string() + ": " + ec.message());
  committed_ = true;
}

}  // namespace spheredyn::scenario

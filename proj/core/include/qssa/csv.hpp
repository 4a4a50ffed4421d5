#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qssa/integrator.hpp"

namespace qssa {

/// 17 significant digits, exact round trip; "nan", "inf", "-inf" otherwise.
std::string format_number(double x);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t x);

/// Comma-separated writer with `#`-prefixed comment lines.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(&out) {}
  /// Opens `path` for writing; throws Error on failure.
  explicit CsvWriter(const std::string& path);

  void comment(std::string_view text);
  void header(const std::vector<std::string>& names);
  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);

 private:
  std::ofstream file_;
  std::ostream* out_;
  std::size_t columns_ = 0;
};

/// Trajectory as `t,s,c,g_s,L` with one row per accepted step. When
/// `crossing` is given, its row is inserted in time order after a
/// `# event=crossing` comment.
void write_trajectory_csv(CsvWriter& csv, const FullTrajectory& trajectory,
                          const CrossingRecord* crossing = nullptr);

}  // namespace qssa

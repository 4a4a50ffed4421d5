#include "qssa/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "qssa/errors.hpp"
#include "qssa/mass_action.hpp"

namespace qssa {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : file_(path), out_(&file_) {
  if (!file_) throw Error("cannot open " + path + " for writing");
  file_.precision(17);
}

void CsvWriter::comment(std::string_view text) { *out_ << "# " << text << '\n'; }

void CsvWriter::header(const std::vector<std::string>& names) {
  columns_ = names.size();
  for (std::size_t i = 0; i < names.size(); ++i) *out_ << (i ? "," : "") << names[i];
  *out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
  row(std::vector<double>(values));
}

void CsvWriter::row(const std::vector<double>& values) {
  if (columns_ && values.size() != columns_) {
    throw Error("csv row has " + std::to_string(values.size()) + " fields, header has " +
                std::to_string(columns_));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    *out_ << (i ? "," : "") << format_number(values[i]);
  }
  *out_ << '\n';
}

void write_trajectory_csv(CsvWriter& csv, const FullTrajectory& trajectory,
                          const CrossingRecord* crossing) {
  const ReactionConfig& cfg = trajectory.config;
  csv.header({"t", "s", "c", "g_s", "L"});
  auto emit = [&](double t, double s, double c) {
    const double g = qss_manifold(std::max(s, 0.0), cfg);
    csv.row({t, s, c, g, c - g});
  };
  const auto times = trajectory.times();
  const auto states = trajectory.states();
  bool pending = crossing != nullptr;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (pending && crossing->t_cross <= times[i]) {
      csv.comment("event=crossing");
      emit(crossing->t_cross, crossing->s_cross, crossing->c_cross);
      pending = false;
    }
    emit(times[i], states[i][0], states[i][1]);
  }
  if (pending) {
    csv.comment("event=crossing");
    emit(crossing->t_cross, crossing->s_cross, crossing->c_cross);
  }
}

}  // namespace qssa

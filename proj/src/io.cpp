#include "gch/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gch/errors.hpp"

namespace gch {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<double> parse_row(const std::string& line, std::size_t columns,
                              const std::filesystem::path& path, std::size_t line_no) {
  std::vector<double> values;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || *end != '\0') {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": malformed number '" + cell + "'");
    }
    values.push_back(v);
  }
  if (values.size() != columns) {
    throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                  std::to_string(columns) + " columns");
  }
  return values;
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path, const char* header,
                                          std::size_t columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw IoError(path.string() + ": unexpected header, want '" + header + "'");
  }
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    rows.push_back(parse_row(line, columns, path, line_no));
  }
  return rows;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_timeseries(std::span<const DiagnosticsRecord> trail, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << kTimeseriesHeader << '\n';
  for (const auto& r : trail) {
    out << format_double(r.time) << ',' << format_double(r.mean_u) << ',' << format_double(r.mean_m)
        << ',' << format_double(r.energy) << ',' << format_double(r.norm_h1g) << ','
        << format_double(r.min_slope) << ',' << format_double(r.max_abs_u) << '\n';
  }
  finish(out, path);
}

std::vector<DiagnosticsRecord> read_timeseries(const std::filesystem::path& path) {
  std::vector<DiagnosticsRecord> trail;
  for (const auto& v : read_csv(path, kTimeseriesHeader, 7)) {
    trail.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
  }
  return trail;
}

void write_snapshot(const FieldState& state, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << kSnapshotHeader << '\n';
  const auto x = state.grid.nodes();
  for (std::size_t i = 0; i < state.u.size(); ++i) {
    out << format_double(x[i]) << ',' << format_double(state.u[i]) << '\n';
  }
  finish(out, path);
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  Snapshot snap;
  for (const auto& v : read_csv(path, kSnapshotHeader, 2)) {
    snap.x.push_back(v[0]);
    snap.u.push_back(v[1]);
  }
  return snap;
}

}  // namespace gch

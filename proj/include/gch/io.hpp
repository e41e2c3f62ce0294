#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "gch/diagnostics.hpp"

namespace gch {

inline constexpr const char* kTimeseriesHeader = "t,mean_u,mean_m,energy,norm_h1g,min_slope,max_abs_u";
inline constexpr const char* kSnapshotHeader = "x,u";

/// CSV time series, one row per record, 17 significant digits.
void write_timeseries(std::span<const DiagnosticsRecord> trail, const std::filesystem::path& path);
std::vector<DiagnosticsRecord> read_timeseries(const std::filesystem::path& path);

/// CSV snapshot with one "x,u" row per grid node.
void write_snapshot(const FieldState& state, const std::filesystem::path& path);

struct Snapshot {
  std::vector<double> x;
  std::vector<double> u;
};
Snapshot read_snapshot(const std::filesystem::path& path);

/// "%.17g" formatting shared by every writer; round-trips doubles exactly.
std::string format_double(double value);

}  // namespace gch

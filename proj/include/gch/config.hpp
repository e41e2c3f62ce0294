#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "gch/integrator.hpp"

namespace gch {

struct FourierMode {
  int k = 1;
  double cos = 0.0;
  double sin = 0.0;
};

/// Initial condition. Wavenumbers are mode indices (multiples of 2*pi/period).
struct InitialSpec {
  std::string kind = "cosine";  // "cosine" | "fourier-modes" | "gaussian-bump"
  // cosine: offset + amplitude * cos(k x + phase)
  double amplitude = 1.0;
  int wavenumber = 1;
  double phase = 0.0;
  double offset = 0.0;
  // fourier-modes
  std::vector<FourierMode> modes;
  // gaussian-bump: amplitude * exp(-(x - center)^2 / (2 width^2)); NaN = defaults
  double center = std::numeric_limits<double>::quiet_NaN();
  double width = std::numeric_limits<double>::quiet_NaN();

  FieldState build(const Grid& grid) const;
};

/// Manufactured travelling wave u*(x, t) = amplitude * cos(k (x - speed t)).
struct ManufacturedSpec {
  double amplitude = 0.5;
  double speed = 1.0;
  int wavenumber = 1;
  std::vector<double> dt_sweep = {4e-3, 2e-3, 1e-3};
};

struct CompareSpec {
  int samples = 20;
  int band = 16;
  double decay = 2.0;
  std::vector<std::string> presets = {"identity", "alpha2", "helmholtz", "example-vi"};
  std::vector<std::string> reference_fields = {"constant", "cosine"};
};

struct SamplesSection {
  int count = 100;
  int band = 16;
  double decay = 2.0;
};

/// Parsed configuration file. Every section is optional; the defaults give
/// the classical Camassa-Holm equation with u0 = cos x.
struct RunConfig {
  int n = 128;
  double period = 2.0 * std::numbers::pi;
  std::string operator_name = "identity";
  double a = 2.0;
  double b = 1.0;
  InitialSpec initial;
  StepperConfig time;
  MonitorConfig monitor{1e6, 1e12, 10};
  std::filesystem::path output_dir = "out";
  int output_stride = 100;
  ManufacturedSpec manufactured;
  CompareSpec compare;
  SamplesSection samples;
  std::uint64_t seed = 1;

  Grid grid() const;
  ModelParams params() const;
  /// Screens every documented precondition; throws ConfigError naming the field.
  void validate() const;
};

/// Strict parse: unknown keys and wrongly typed values are ConfigErrors.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace gch

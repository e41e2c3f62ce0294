#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gch/config.hpp"
#include "gch/verifier.hpp"

namespace gch {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kError = 1;          // configuration, usage or I/O failure
inline constexpr int kWaveBreaking = 2;
inline constexpr int kNormCap = 3;
inline constexpr int kNonFinite = 4;
inline constexpr int kCheckFailed = 5;    // a verification or convergence check failed
}  // namespace exit_code

struct CommandOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  bool quiet = false;
};

/// Overrides for `verify` on top of the config's sample section.
struct VerifyOverrides {
  std::optional<int> samples;
  std::optional<int> band;
  std::optional<double> decay;
  std::optional<int> n;
  std::optional<double> s;
  std::optional<double> comm_n;
  std::optional<double> comm_s;
  std::optional<double> comm_sigma;
};

struct ConvergenceStudy {
  std::vector<double> dts;
  std::vector<double> errors;
  /// Least-squares slope of log(error) against log(dt); NaN when every error
  /// sits at the rounding floor.
  double order = 0.0;
  std::vector<double> pairwise_orders;
  bool passed = false;
};

inline constexpr double kOrderLow = 3.5;
inline constexpr double kOrderHigh = 4.5;
/// Errors at or below this are treated as exact.
inline constexpr double kErrorFloor = 1e-14;

/// Exact forcing that makes u* a solution of the u-form equation.
Forcing manufactured_forcing(const Grid& grid, const ModelParams& params, const ManufacturedSpec& spec);
FieldState manufactured_solution(const Grid& grid, const ManufacturedSpec& spec, double t);

/// Integrates the forced problem from u*(., 0) over the dt sweep and measures
/// the L2 error at t_end. Throws ConfigError for fewer than three steps or an
/// aliased manufactured solution.
ConvergenceStudy manufactured_convergence(const Grid& grid, const ModelParams& params,
                                          const ManufacturedSpec& spec, double t_end,
                                          Form form = Form::UForm);

int cmd_run(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_converge(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& suite, const CommandOptions& opts, const VerifyOverrides& overrides,
               std::ostream& out, std::ostream& err);
int cmd_compare_forms(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_presets(std::ostream& out);

}  // namespace gch

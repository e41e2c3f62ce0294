#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "gch/diagnostics.hpp"

namespace gch {

enum class Method { Rk4Fixed, Rk4Doubling };
enum class Form { UForm, MForm };

struct StepperConfig {
  Method method = Method::Rk4Fixed;
  double dt = 1e-3;
  double t_end = 1.0;
  /// Step-doubling error tolerance (Rk4Doubling only).
  double tolerance = 1e-8;
  Form form = Form::UForm;

  void validate() const;
};

struct MonitorConfig {
  /// Fires when min_x u_x < -slope_threshold.
  double slope_threshold = std::numeric_limits<double>::infinity();
  /// Fires when the gamma-weighted s = 1 norm exceeds this cap.
  double norm_cap = std::numeric_limits<double>::infinity();
  int check_stride = 1;

  void validate() const;
};

enum class StopReason { ReachedTEnd, WaveBreakingDetected, NormCapExceeded, NonFinite };

std::string_view to_string(StopReason reason) noexcept;

struct RunResult {
  FieldState final_state;
  StopReason stop_reason = StopReason::ReachedTEnd;
  double stop_time = 0.0;
  std::size_t steps = 0;
  std::vector<DiagnosticsRecord> trail;
};

using Rhs = std::function<FieldState(const FieldState&)>;
/// Additive source term for the u-equation, evaluated on the whole grid.
using Forcing = std::function<FieldState(const Grid&, double t)>;
/// Called with the current u after every accepted step.
using StepObserver = std::function<void(const FieldState& u, std::size_t step)>;

/// Lifts a pointwise source f(x, t) to a Forcing.
Forcing pointwise_forcing(std::function<double(double x, double t)> f);

/// Classical four-stage Runge-Kutta step for u_t = rhs(u) + forcing(t).
/// Throws NonFiniteError when a stage produces NaN or infinity.
FieldState rk4_step(const FieldState& state, double dt, const Rhs& rhs, const Forcing& forcing = {});

/// Checks the slope and norm monitors; returns the triggered stop reason.
std::optional<StopReason> wave_breaking_monitor(const FieldState& state, const MonitorConfig& cfg,
                                                const OperatorL& L);

/// Advances `initial` to stepper.t_end or until a monitor fires.
///
/// Diagnostics are recorded at t = 0, every check_stride steps and at the
/// stop time; the monitors are evaluated at the same instants. In m-form the
/// momentum is evolved and u is recovered through the inverse Helmholtz map.
/// With Rk4Doubling, stepper.dt is the initial and largest step.
///
/// Throws ConfigError for invalid configurations and NonFiniteError for a
/// non-finite initial field. Non-finite values during the run end it with
/// StopReason::NonFinite.
RunResult integrate(const FieldState& initial, const ModelParams& params, const StepperConfig& stepper,
                    const MonitorConfig& monitor, const Forcing& forcing = {},
                    const StepObserver& observer = {});

}  // namespace gch

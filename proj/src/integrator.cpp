#include "gch/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "gch/errors.hpp"

namespace gch {

namespace {

void require_finite(const FieldState& f, const char* what) {
  for (double v : f.u) {
    if (!std::isfinite(v)) throw NonFiniteError(std::string(what) + ": non-finite value");
  }
}

// y + c * k, in place on a copy.
FieldState axpy(const FieldState& y, double c, const FieldState& k) {
  FieldState out = y;
  for (std::size_t i = 0; i < out.u.size(); ++i) out.u[i] += c * k.u[i];
  return out;
}

double scaled_difference(const FieldState& a, const FieldState& b) {
  double diff = 0.0;
  for (std::size_t i = 0; i < a.u.size(); ++i) diff = std::max(diff, std::abs(a.u[i] - b.u[i]));
  return diff / std::max(1.0, max_abs(b));
}

}  // namespace

void StepperConfig::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("must be positive", "time.t_end");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("must be positive", "time.dt");
  if (dt > t_end) throw ConfigError("must not exceed time.t_end", "time.dt");
  if (!(tolerance > 0.0)) throw ConfigError("must be positive", "time.tolerance");
}

void MonitorConfig::validate() const {
  if (!(slope_threshold > 0.0)) throw ConfigError("must be positive", "monitor.slope_threshold");
  if (!(norm_cap > 0.0)) throw ConfigError("must be positive", "monitor.norm_cap");
  if (check_stride < 1) throw ConfigError("must be a positive integer", "monitor.check_stride");
}

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::ReachedTEnd: return "reached_t_end";
    case StopReason::WaveBreakingDetected: return "wave_breaking_detected";
    case StopReason::NormCapExceeded: return "norm_cap_exceeded";
    case StopReason::NonFinite: return "non_finite";
  }
  return "unknown";
}

Forcing pointwise_forcing(std::function<double(double, double)> f) {
  return [f = std::move(f)](const Grid& grid, double t) {
    return FieldState::sample(grid, [&](double x) { return f(x, t); }, t);
  };
}

FieldState rk4_step(const FieldState& state, double dt, const Rhs& rhs, const Forcing& forcing) {
  const double t = state.time;
  auto eval = [&](const FieldState& y, double time) {
    FieldState in = y;
    in.time = time;
    FieldState k = rhs(in);
    if (forcing) k = k + forcing(y.grid, time);
    require_finite(k, "rk4_step");
    return k;
  };

  const FieldState k1 = eval(state, t);
  const FieldState k2 = eval(axpy(state, 0.5 * dt, k1), t + 0.5 * dt);
  const FieldState k3 = eval(axpy(state, 0.5 * dt, k2), t + 0.5 * dt);
  const FieldState k4 = eval(axpy(state, dt, k3), t + dt);

  FieldState out = state;
  for (std::size_t i = 0; i < out.u.size(); ++i) {
    out.u[i] += dt / 6.0 * (k1.u[i] + 2.0 * k2.u[i] + 2.0 * k3.u[i] + k4.u[i]);
  }
  out.time = t + dt;
  require_finite(out, "rk4_step");
  return out;
}

std::optional<StopReason> wave_breaking_monitor(const FieldState& state, const MonitorConfig& cfg,
                                                const OperatorL& L) {
  const FieldState ux = derivative(state, 1);
  const double min_slope = *std::min_element(ux.u.begin(), ux.u.end());
  if (min_slope < -cfg.slope_threshold) return StopReason::WaveBreakingDetected;
  if (sobolev_norm(state, 1.0, NormFamily::gamma_weighted(L)) > cfg.norm_cap) {
    return StopReason::NormCapExceeded;
  }
  return std::nullopt;
}

RunResult integrate(const FieldState& initial, const ModelParams& params, const StepperConfig& stepper,
                    const MonitorConfig& monitor, const Forcing& forcing,
                    const StepObserver& observer) {
  stepper.validate();
  monitor.validate();
  params.validate(initial.grid);
  if (static_cast<int>(initial.u.size()) != initial.grid.size()) {
    throw ConfigError("initial field length does not match grid", "initial");
  }
  require_finite(initial, "integrate: initial field");

  const bool m_form = stepper.form == Form::MForm;
  const OperatorL& L = params.L;

  Rhs rhs;
  Forcing evolved_forcing;
  if (m_form) {
    rhs = [&params](const FieldState& m) { return rhs_m(m, params); };
    if (forcing) {
      evolved_forcing = [&forcing, &L](const Grid& g, double t) { return momentum(forcing(g, t), L); };
    }
  } else {
    rhs = [&params](const FieldState& u) { return rhs_u_direct(u, params); };
    evolved_forcing = forcing;
  }
  auto to_u = [&](const FieldState& y) { return m_form ? inverse_helmholtz(y, L) : y; };

  const double t0 = initial.time;
  const double t_final = t0 + stepper.t_end;

  RunResult result{initial, StopReason::ReachedTEnd, 0.0, 0, {}};
  FieldState y = m_form ? momentum(initial, L) : initial;
  y.time = t0;
  FieldState u = initial;
  u.time = t0;

  auto checkpoint = [&](const FieldState& current) -> std::optional<StopReason> {
    if (result.trail.empty() || current.time > result.trail.back().time) {
      result.trail.push_back(conserved_quantities(current, params));
    }
    return wave_breaking_monitor(current, monitor, L);
  };

  auto finish = [&](StopReason reason) {
    result.final_state = u;
    result.stop_reason = reason;
    result.stop_time = u.time;
    return result;
  };

  if (auto stop = checkpoint(u)) return finish(*stop);

  double dt = stepper.dt;
  std::size_t step = 0;
  try {
    while (t_final - y.time > 1e-12 * stepper.t_end) {
      const double h = std::min(dt, t_final - y.time);
      FieldState next = y;
      if (stepper.method == Method::Rk4Fixed) {
        next = rk4_step(y, h, rhs, evolved_forcing);
        // Accumulate time by step count to avoid drift.
        next.time = std::min(t_final, t0 + static_cast<double>(step + 1) * stepper.dt);
      } else {
        const FieldState full = rk4_step(y, h, rhs, evolved_forcing);
        const FieldState half = rk4_step(rk4_step(y, 0.5 * h, rhs, evolved_forcing), 0.5 * h, rhs,
                                         evolved_forcing);
        const double err = scaled_difference(full, half);
        if (err > stepper.tolerance) {
          dt = 0.5 * h;
          if (dt < 1e-14 * stepper.t_end) throw NonFiniteError("integrate: step size underflow");
          continue;
        }
        next = half;
        if (err < stepper.tolerance / 64.0) dt = std::min(2.0 * dt, stepper.dt);
      }
      if (t_final - next.time <= 1e-12 * stepper.t_end) next.time = t_final;

      y = std::move(next);
      u = to_u(y);
      ++step;
      result.steps = step;
      if (observer) observer(u, step);

      const bool at_end = y.time >= t_final;
      if (step % static_cast<std::size_t>(monitor.check_stride) == 0 || at_end) {
        if (auto stop = checkpoint(u)) return finish(*stop);
      }
    }
  } catch (const NonFiniteError&) {
    return finish(StopReason::NonFinite);
  }
  return finish(StopReason::ReachedTEnd);
}

}  // namespace gch

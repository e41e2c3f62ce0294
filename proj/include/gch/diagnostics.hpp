#pragma once

#include "gch/operators.hpp"

namespace gch {

/// Monitor values of one state. Integrals use the trapezoid rule, which is
/// exact for band-limited periodic fields.
struct DiagnosticsRecord {
  double time = 0.0;
  double mean_u = 0.0;     // int u dx
  double mean_m = 0.0;     // int m dx
  double energy = 0.0;     // int u m dx
  double norm_h1g = 0.0;   // gamma-weighted s = 1 norm
  double min_slope = 0.0;  // min_x u_x
  double max_abs_u = 0.0;
};

DiagnosticsRecord conserved_quantities(const FieldState& state, const ModelParams& params);

/// (4b - 2a) * int u u_x m dx, the instantaneous rate of change of the energy
/// int u m dx under the semidiscrete flow.
double energy_rate(const FieldState& state, const ModelParams& params);

}  // namespace gch

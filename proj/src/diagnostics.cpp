#include "gch/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace gch {

DiagnosticsRecord conserved_quantities(const FieldState& state, const ModelParams& params) {
  const FieldState m = momentum(state, params.L);
  const FieldState ux = derivative(state, 1);

  DiagnosticsRecord rec;
  rec.time = state.time;
  rec.mean_u = integrate(state.u, state.grid);
  rec.mean_m = integrate(m.u, m.grid);
  rec.energy = inner_l2(state, m);
  rec.norm_h1g = sobolev_norm(state, 1.0, NormFamily::gamma_weighted(params.L));
  rec.min_slope = *std::min_element(ux.u.begin(), ux.u.end());
  rec.max_abs_u = max_abs(state);
  return rec;
}

double energy_rate(const FieldState& state, const ModelParams& params) {
  const FieldState m = momentum(state, params.L);
  const FieldState ux = derivative(state, 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < state.u.size(); ++i) acc += state.u[i] * ux.u[i] * m.u[i];
  acc *= state.grid.period() / state.grid.size();
  return (4.0 * params.b - 2.0 * params.a) * acc;
}

}  // namespace gch

#pragma once

#include "gch/operator_l.hpp"
#include "gch/spectral.hpp"

namespace gch {

/// Coefficients of m_t + b u m_x + a m u_x = 0 with m = (1 - L d_xx) u.
struct ModelParams {
  double a = 2.0;
  double b = 1.0;
  OperatorL L = OperatorL::preset("identity");

  /// Classical Camassa-Holm: a = 2, b = 1, L = identity.
  static ModelParams camassa_holm() { return {}; }

  /// Throws ConfigError ("params.a", "params.b", "operator") on violations.
  void validate(const Grid& grid) const;
};

/// m = (1 - L d_xx) u.
FieldState momentum(const FieldState& u, const OperatorL& L);
/// Solves (1 - L d_xx) u = v.
FieldState inverse_helmholtz(const FieldState& v, const OperatorL& L);
Spectrum inverse_helmholtz(const Spectrum& v, const OperatorL& L);
/// [L d_xx, u] v = L d_xx (u v) - u L d_xx v. Products are dealiased and
/// evaluated in coefficient space (galerkin_product).
FieldState commutator_L(const FieldState& u, const FieldState& v, const OperatorL& L);
Spectrum commutator_L(const Spectrum& u, const Spectrum& v, const OperatorL& L);

/// u_t from the u-form equation:
///   (1 - L d_xx)^{-1} [ -(a+b) u u_x + a u_x L d_xx u + b u L d_xx u_x ].
/// Throws NonFiniteError if the result is not finite.
FieldState rhs_u_direct(const FieldState& u, const ModelParams& params);
/// m_t = -b u m_x - a m u_x with u = (1 - L d_xx)^{-1} m.
FieldState rhs_m(const FieldState& m, const ModelParams& params);
/// Classical CH in nonlocal form, u_t = -u u_x - d_x (1 - d_xx)^{-1} (u^2 + u_x^2/2).
/// Independent of the generalized operators; used as an oracle.
FieldState rhs_ch_reference(const FieldState& u);

/// A(u) w = (a+b) u w_x + b Gamma^{-(p+2)} [L d_xx, u] w_x, the quasi-linear
/// operator exactly as it is usually printed for this model. Not used by the
/// solver: it does not reproduce the u-form equation (quasilinear_residual).
/// Products go through galerkin_product, so A(c) w is exact for constant c.
FieldState apply_A(const FieldState& u, const FieldState& w, const ModelParams& params);
Spectrum apply_A(const Spectrum& u, const Spectrum& w, const ModelParams& params);

/// ||rhs_u_direct(u) + A(u)u||_0 / ||rhs_u_direct(u)||_0 (unnormalized when the
/// direct right-hand side vanishes). Measures how far u_t = -A(u)u is from
/// the u-form equation.
double quasilinear_residual(const FieldState& u, const ModelParams& params);

}  // namespace gch

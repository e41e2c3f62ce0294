#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gch/grid.hpp"
#include "gch/operator_l.hpp"

namespace gch {

/// Real field sampled on the grid nodes at a time instant.
struct FieldState {
  Grid grid;
  std::vector<double> u;
  double time = 0.0;

  /// Zero field on `grid`.
  static FieldState zeros(const Grid& grid, double time = 0.0);
  /// Samples f at every node.
  static FieldState sample(const Grid& grid, const std::function<double(double)>& f,
                           double time = 0.0);

  std::size_t size() const noexcept { return u.size(); }
};

/// Fourier coefficients of a real field, stored for k >= 0 only; the
/// coefficient at -k is the conjugate of the one at k.
class Spectrum {
 public:
  explicit Spectrum(Grid grid);
  Spectrum(Grid grid, std::vector<std::complex<double>> half);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const std::complex<double>> half() const noexcept { return coeffs_; }
  std::span<std::complex<double>> half() noexcept { return coeffs_; }

  /// Coefficient at mode index j in [-n/2+1, n/2].
  std::complex<double> at(int j) const;

 private:
  Grid grid_;
  std::vector<std::complex<double>> coeffs_;
};

using Symbol = std::function<std::complex<double>(double k)>;

/// Sobolev weight family.
struct NormFamily {
  enum class Kind { Bessel, GammaWeighted };
  Kind kind = Kind::Bessel;
  std::optional<OperatorL> L;

  static NormFamily bessel() { return {}; }
  static NormFamily gamma_weighted(OperatorL op) { return {Kind::GammaWeighted, std::move(op)}; }

  /// (1+k^2)^s for Bessel, (1+k^2 l(k))^(2s/(p+2)) for GammaWeighted.
  double weight(double k, double s) const;
  const char* label() const noexcept { return kind == Kind::Bessel ? "bessel" : "gamma-weighted"; }
};

Spectrum to_spectrum(const FieldState& field);
FieldState to_field(const Spectrum& spectrum, double time = 0.0);

/// Multiplies every coefficient by symbol(k). Throws ConfigError when the
/// symbol is not finite at some grid wavenumber.
Spectrum apply_symbol(const Spectrum& spectrum, const Symbol& symbol);
FieldState apply_symbol(const FieldState& field, const Symbol& symbol);

/// Spectral derivative d^order/dx^order, order 0..6.
FieldState derivative(const FieldState& field, int order);
Spectrum derivative(const Spectrum& spectrum, int order);

/// Two-thirds rule: zero every mode with |k| > (2/3) k_max.
Spectrum dealias(Spectrum spectrum);
/// Pointwise product u*v followed by dealiasing.
FieldState dealiased_product(const FieldState& u, const FieldState& v);

/// Dealiased product evaluated as a truncated convolution of the retained
/// modes (|j| <= n/3). For inputs inside that band it agrees with
/// dealias(to_spectrum(u*v)) in exact arithmetic, but it never leaves
/// coefficient space: modes outside the exact support of the product stay
/// exactly zero, and multiplication by a constant is exact.
Spectrum galerkin_product(const Spectrum& u, const Spectrum& v);

Spectrum operator+(const Spectrum& lhs, const Spectrum& rhs);
Spectrum operator-(const Spectrum& lhs, const Spectrum& rhs);
Spectrum operator*(double scale, const Spectrum& spectrum);

/// sqrt(period * sum_k w(k,s) |u_k|^2).
double sobolev_norm(const FieldState& field, double s, const NormFamily& family);
double sobolev_norm(const Spectrum& spectrum, double s, const NormFamily& family);
/// Real inner product period * Re sum_k w(k,s) conj(f_k) g_k.
double sobolev_inner(const FieldState& f, const FieldState& g, double s, const NormFamily& family);
double sobolev_inner(const Spectrum& f, const Spectrum& g, double s, const NormFamily& family);

/// Gamma^sigma: symbol (1 + k^2 l(k))^(sigma/(p+2)).
FieldState gamma_power(const FieldState& field, double sigma, const OperatorL& L);
Spectrum gamma_power(const Spectrum& spectrum, double sigma, const OperatorL& L);

/// Trapezoid quadrature of f over one period.
double integrate(std::span<const double> f, const Grid& grid);
/// Grid L2 inner product by trapezoid quadrature.
double inner_l2(const FieldState& f, const FieldState& g);

// Pointwise field arithmetic.
FieldState operator+(const FieldState& lhs, const FieldState& rhs);
FieldState operator-(const FieldState& lhs, const FieldState& rhs);
FieldState operator*(double scale, const FieldState& field);
double max_abs(const FieldState& field);

}  // namespace gch

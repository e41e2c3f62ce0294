#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gch/grid.hpp"

namespace gch {

/// Constant-coefficient dispersion operator L, represented by its even
/// Fourier symbol l(k). The momentum map 1 - L d_xx then has symbol
/// 1 + k^2 l(k).
class OperatorL {
 public:
  enum class Kind { Polynomial, BesselPower };

  /// l(k) = sum_j coeffs[j] * k^(2j). Order is 2*(coeffs.size()-1); the
  /// leading coefficient must be positive.
  static OperatorL polynomial(std::vector<double> coeffs, std::string name = {});
  /// l(k) = alpha2 * (1 + k^2)^(p/2), any real p >= 0.
  static OperatorL bessel_power(double alpha2, double p, std::string name = {});

  /// Named presets: "identity", "alpha2" (alpha^2 = 0.5) or "alpha2:<value>",
  /// "helmholtz" (1 - d_xx), "example-vi" (2 - d_xx), "bessel:<p>,<alpha2>",
  /// "poly:<c0>,<c1>,...". Throws ConfigError on unknown or malformed names.
  static OperatorL preset(std::string_view name);
  /// The four fixed presets shipped with the library.
  static std::vector<std::string> preset_names();

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  /// Order p of L.
  double order() const noexcept { return order_; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }

  double symbol(double k) const noexcept;
  /// 1 + k^2 l(k), the symbol of 1 - L d_xx.
  double momentum_symbol(double k) const noexcept { return 1.0 + k * k * symbol(k); }

  /// Throws ConfigError if l(k) is not strictly positive and finite at every
  /// grid wavenumber.
  void validate_on(const Grid& grid) const;

 private:
  OperatorL(Kind kind, std::vector<double> coeffs, double order, std::string name)
      : kind_(kind), coeffs_(std::move(coeffs)), order_(order), name_(std::move(name)) {}

  Kind kind_;
  // Polynomial: c_0..c_J. BesselPower: {alpha2}.
  std::vector<double> coeffs_;
  double order_;
  std::string name_;
};

/// l(k) for the given operator.
inline double l_symbol(const OperatorL& L, double k) { return L.symbol(k); }

}  // namespace gch

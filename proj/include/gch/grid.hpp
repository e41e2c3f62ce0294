#pragma once

#include <complex>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace gch {

namespace detail {
struct GridData;
}

/// Periodic collocation grid on [0, period) with n equispaced nodes.
///
/// Copies are cheap and share the immutable node/wavenumber tables and the
/// FFTW plans. Transforms use the new-array execute interface, so a Grid may
/// be used from several threads at once.
class Grid {
 public:
  /// Throws ConfigError unless n is even, n >= 8 and period > 0.
  static Grid make(int n, double period = 2.0 * std::numbers::pi);

  int size() const noexcept;
  double period() const noexcept;
  /// Wavenumber spacing 2*pi/period.
  double dk() const noexcept;
  /// Largest resolved wavenumber, (n/2)*dk.
  double k_max() const noexcept;
  /// Number of stored half-spectrum coefficients, n/2 + 1.
  int half_size() const noexcept { return size() / 2 + 1; }
  /// Highest mode index kept by the two-thirds rule: floor(n/3).
  int dealias_cutoff() const noexcept { return size() / 3; }

  /// x_j = j*period/n, j = 0..n-1.
  std::span<const double> nodes() const noexcept;
  /// Ascending table k_j = dk*j for j = -n/2+1 .. n/2.
  std::span<const double> wavenumbers() const noexcept;
  /// Wavenumber of the half-spectrum slot j (0 <= j <= n/2).
  double wavenumber(int j) const noexcept { return dk() * j; }

  /// Real-to-half-complex DFT scaled by 1/n, so out[j] ~ (1/period) * int u e^{-ikx}.
  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  /// Inverse of forward(): u(x_j) = sum_k c_k e^{ikx_j}.
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

  friend bool operator==(const Grid& lhs, const Grid& rhs) noexcept;

 private:
  explicit Grid(std::shared_ptr<const detail::GridData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::GridData> data_;
};

}  // namespace gch

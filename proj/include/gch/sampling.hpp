#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "gch/spectral.hpp"

namespace gch {

/// Random band-limited test fields: mode k carries magnitude (1+|k|)^-decay
/// and a random phase (random sign at k = 0).
struct SampleSpec {
  int count = 100;
  int band = 16;
  double decay = 2.0;
  std::uint64_t seed = 1;

  /// Throws ConfigError unless band <= (2/3) k_max of `grid` and decay >= 2.
  void validate(const Grid& grid) const;
};

/// Grid-independent Fourier description of a test field; mode index j maps to
/// wavenumber j * dk on whichever grid it is synthesized.
struct ModeSet {
  std::vector<std::complex<double>> coeffs;  // j = 0..band

  FieldState on(const Grid& grid) const;
  Spectrum spectrum(const Grid& grid) const;
  int band() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

class FieldSampler {
 public:
  explicit FieldSampler(std::uint64_t seed) : rng_(seed) {}

  ModeSet next(int band, double decay);

 private:
  std::mt19937_64 rng_;
};

}  // namespace gch

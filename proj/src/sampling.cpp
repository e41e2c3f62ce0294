#include "gch/sampling.hpp"

#include <cmath>
#include <numbers>

#include "gch/errors.hpp"

namespace gch {

void SampleSpec::validate(const Grid& grid) const {
  if (count < 0) throw ConfigError("must be nonnegative", "samples.count");
  if (band < 0 || band > grid.dealias_cutoff()) {
    throw ConfigError("band must lie in [0, n/3] = [0, " + std::to_string(grid.dealias_cutoff()) + "]",
                      "samples.band");
  }
  if (!(decay >= 2.0)) throw ConfigError("decay must be >= 2", "samples.decay");
}

Spectrum ModeSet::spectrum(const Grid& grid) const {
  if (band() >= grid.size() / 2) throw ConfigError("mode set exceeds grid resolution", "samples.band");
  Spectrum spec(grid);
  auto h = spec.half();
  for (std::size_t j = 0; j < coeffs.size(); ++j) h[j] = coeffs[j];
  return spec;
}

FieldState ModeSet::on(const Grid& grid) const { return to_field(spectrum(grid)); }

ModeSet FieldSampler::next(int band, double decay) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution sign(0.5);
  ModeSet modes;
  modes.coeffs.resize(static_cast<std::size_t>(band) + 1);
  modes.coeffs[0] = sign(rng_) ? 1.0 : -1.0;
  for (int j = 1; j <= band; ++j) {
    const double magnitude = std::pow(1.0 + j, -decay);
    modes.coeffs[j] = std::polar(magnitude, phase(rng_));
  }
  return modes;
}

}  // namespace gch

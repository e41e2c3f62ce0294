#include "gch/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gch/errors.hpp"

namespace gch {

namespace {

void require_same_grid(const FieldState& a, const FieldState& b, const char* what) {
  if (!(a.grid == b.grid) || a.u.size() != b.u.size()) {
    throw std::invalid_argument(std::string(what) + ": fields live on different grids");
  }
}

// Multiplicity of half-spectrum slot j in the full two-sided sum.
double multiplicity(int j, int n) { return (j == 0 || j == n / 2) ? 1.0 : 2.0; }

}  // namespace

FieldState FieldState::zeros(const Grid& grid, double time) {
  return {grid, std::vector<double>(grid.size(), 0.0), time};
}

FieldState FieldState::sample(const Grid& grid, const std::function<double(double)>& f,
                              double time) {
  FieldState out = zeros(grid, time);
  const auto x = grid.nodes();
  std::transform(x.begin(), x.end(), out.u.begin(), f);
  return out;
}

Spectrum::Spectrum(Grid grid) : grid_(std::move(grid)), coeffs_(grid_.half_size()) {}

Spectrum::Spectrum(Grid grid, std::vector<std::complex<double>> half)
    : grid_(std::move(grid)), coeffs_(std::move(half)) {
  if (static_cast<int>(coeffs_.size()) != grid_.half_size()) {
    throw std::invalid_argument("Spectrum: coefficient count does not match grid");
  }
  coeffs_.front().imag(0.0);
  coeffs_.back().imag(0.0);
}

std::complex<double> Spectrum::at(int j) const {
  const int n = grid_.size();
  if (j <= -n / 2 || j > n / 2) throw std::out_of_range("Spectrum::at: mode index out of range");
  return j >= 0 ? coeffs_[j] : std::conj(coeffs_[-j]);
}

double NormFamily::weight(double k, double s) const {
  if (kind == Kind::Bessel) return std::pow(1.0 + k * k, s);
  return std::pow(L->momentum_symbol(k), 2.0 * s / (L->order() + 2.0));
}

Spectrum to_spectrum(const FieldState& field) {
  if (static_cast<int>(field.u.size()) != field.grid.size()) {
    throw std::invalid_argument("to_spectrum: field length does not match grid");
  }
  Spectrum out(field.grid);
  field.grid.forward(field.u, out.half());
  auto h = out.half();
  h.front().imag(0.0);
  h.back().imag(0.0);
  return out;
}

FieldState to_field(const Spectrum& spectrum, double time) {
  FieldState out = FieldState::zeros(spectrum.grid(), time);
  spectrum.grid().inverse(spectrum.half(), out.u);
  return out;
}

Spectrum apply_symbol(const Spectrum& spectrum, const Symbol& symbol) {
  const Grid& grid = spectrum.grid();
  Spectrum out(grid);
  auto dst = out.half();
  const auto src = spectrum.half();
  for (int j = 0; j < grid.half_size(); ++j) {
    const std::complex<double> factor = symbol(grid.wavenumber(j));
    if (!std::isfinite(factor.real()) || !std::isfinite(factor.imag())) {
      throw ConfigError("symbol is not finite at k = " + std::to_string(grid.wavenumber(j)));
    }
    dst[j] = factor * src[j];
  }
  // Slots 0 and n/2 are self-conjugate; keep the real projection.
  dst.front().imag(0.0);
  dst.back().imag(0.0);
  return out;
}

FieldState apply_symbol(const FieldState& field, const Symbol& symbol) {
  return to_field(apply_symbol(to_spectrum(field), symbol), field.time);
}

Spectrum derivative(const Spectrum& spectrum, int order) {
  if (order < 0 || order > 6) throw std::invalid_argument("derivative: order must be in 0..6");
  if (order == 0) return spectrum;
  return apply_symbol(spectrum, [order](double k) {
    return std::pow(std::complex<double>(0.0, k), order);
  });
}

FieldState derivative(const FieldState& field, int order) {
  return to_field(derivative(to_spectrum(field), order), field.time);
}

Spectrum dealias(Spectrum spectrum) {
  auto h = spectrum.half();
  const int cutoff = spectrum.grid().dealias_cutoff();
  for (int j = cutoff + 1; j < static_cast<int>(h.size()); ++j) h[j] = 0.0;
  return spectrum;
}

FieldState dealiased_product(const FieldState& u, const FieldState& v) {
  require_same_grid(u, v, "dealiased_product");
  FieldState prod = FieldState::zeros(u.grid, u.time);
  for (std::size_t i = 0; i < prod.u.size(); ++i) prod.u[i] = u.u[i] * v.u[i];
  return to_field(dealias(to_spectrum(prod)), u.time);
}

Spectrum galerkin_product(const Spectrum& u, const Spectrum& v) {
  if (!(u.grid() == v.grid())) throw std::invalid_argument("galerkin_product: different grids");
  const int m = u.grid().dealias_cutoff();
  // Two-sided coefficient tables indexed by j + m, j in [-m, m].
  std::vector<std::complex<double>> a(2 * m + 1), b(2 * m + 1);
  for (int j = 0; j <= m; ++j) {
    a[m + j] = u.half()[j];
    a[m - j] = std::conj(u.half()[j]);
    b[m + j] = v.half()[j];
    b[m - j] = std::conj(v.half()[j]);
  }
  Spectrum out(u.grid());
  auto h = out.half();
  for (int k = 0; k <= m; ++k) {
    std::complex<double> acc = 0.0;
    for (int j = k - m; j <= m; ++j) acc += a[m + j] * b[m + k - j];
    h[k] = acc;
  }
  h.front().imag(0.0);
  return out;
}

Spectrum operator+(const Spectrum& lhs, const Spectrum& rhs) {
  if (!(lhs.grid() == rhs.grid())) throw std::invalid_argument("operator+: different grids");
  Spectrum out = lhs;
  for (std::size_t j = 0; j < out.half().size(); ++j) out.half()[j] += rhs.half()[j];
  return out;
}

Spectrum operator-(const Spectrum& lhs, const Spectrum& rhs) {
  if (!(lhs.grid() == rhs.grid())) throw std::invalid_argument("operator-: different grids");
  Spectrum out = lhs;
  for (std::size_t j = 0; j < out.half().size(); ++j) out.half()[j] -= rhs.half()[j];
  return out;
}

Spectrum operator*(double scale, const Spectrum& spectrum) {
  Spectrum out = spectrum;
  for (auto& c : out.half()) c *= scale;
  return out;
}

double sobolev_norm(const Spectrum& spectrum, double s, const NormFamily& family) {
  const Grid& grid = spectrum.grid();
  const auto h = spectrum.half();
  double acc = 0.0;
  for (int j = 0; j < grid.half_size(); ++j) {
    acc += multiplicity(j, grid.size()) * family.weight(grid.wavenumber(j), s) * std::norm(h[j]);
  }
  return std::sqrt(grid.period() * acc);
}

double sobolev_norm(const FieldState& field, double s, const NormFamily& family) {
  return sobolev_norm(to_spectrum(field), s, family);
}

double sobolev_inner(const FieldState& f, const FieldState& g, double s, const NormFamily& family) {
  require_same_grid(f, g, "sobolev_inner");
  return sobolev_inner(to_spectrum(f), to_spectrum(g), s, family);
}

double sobolev_inner(const Spectrum& fs, const Spectrum& gs, double s, const NormFamily& family) {
  if (!(fs.grid() == gs.grid())) throw std::invalid_argument("sobolev_inner: different grids");
  const Grid& grid = fs.grid();
  double acc = 0.0;
  for (int j = 0; j < grid.half_size(); ++j) {
    acc += multiplicity(j, grid.size()) * family.weight(grid.wavenumber(j), s) *
           std::real(std::conj(fs.half()[j]) * gs.half()[j]);
  }
  return grid.period() * acc;
}

Spectrum gamma_power(const Spectrum& spectrum, double sigma, const OperatorL& L) {
  const double exponent = sigma / (L.order() + 2.0);
  return apply_symbol(spectrum, [&L, exponent](double k) {
    return std::complex<double>(std::pow(L.momentum_symbol(k), exponent), 0.0);
  });
}

FieldState gamma_power(const FieldState& field, double sigma, const OperatorL& L) {
  return to_field(gamma_power(to_spectrum(field), sigma, L), field.time);
}

double integrate(std::span<const double> f, const Grid& grid) {
  double acc = 0.0;
  for (double v : f) acc += v;
  return acc * grid.period() / grid.size();
}

double inner_l2(const FieldState& f, const FieldState& g) {
  require_same_grid(f, g, "inner_l2");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.u.size(); ++i) acc += f.u[i] * g.u[i];
  return acc * f.grid.period() / f.grid.size();
}

FieldState operator+(const FieldState& lhs, const FieldState& rhs) {
  require_same_grid(lhs, rhs, "operator+");
  FieldState out = lhs;
  for (std::size_t i = 0; i < out.u.size(); ++i) out.u[i] += rhs.u[i];
  return out;
}

FieldState operator-(const FieldState& lhs, const FieldState& rhs) {
  require_same_grid(lhs, rhs, "operator-");
  FieldState out = lhs;
  for (std::size_t i = 0; i < out.u.size(); ++i) out.u[i] -= rhs.u[i];
  return out;
}

FieldState operator*(double scale, const FieldState& field) {
  FieldState out = field;
  for (double& v : out.u) v *= scale;
  return out;
}

double max_abs(const FieldState& field) {
  double m = 0.0;
  for (double v : field.u) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace gch

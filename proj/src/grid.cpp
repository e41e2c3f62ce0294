#include "gch/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "gch/errors.hpp"

namespace gch {

namespace {

// The FFTW planner is not thread-safe; plan creation and destruction go
// through this lock. Execution with the new-array interface is safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

namespace detail {

struct GridData {
  int n = 0;
  double period = 0.0;
  std::vector<double> nodes;
  std::vector<double> wavenumbers;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  GridData(int n_, double period_) : n(n_), period(period_) {
    nodes.resize(n);
    wavenumbers.resize(n);
    const double h = period / n;
    const double dk = 2.0 * std::numbers::pi / period;
    for (int j = 0; j < n; ++j) {
      nodes[j] = j * h;
      wavenumbers[j] = dk * (j - n / 2 + 1);
    }

    double* real_buf = fftw_alloc_real(n);
    fftw_complex* cplx_buf = fftw_alloc_complex(n / 2 + 1);
    {
      std::lock_guard lock(planner_mutex());
      const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
      r2c = fftw_plan_dft_r2c_1d(n, real_buf, cplx_buf, flags);
      c2r = fftw_plan_dft_c2r_1d(n, cplx_buf, real_buf, flags);
    }
    fftw_free(cplx_buf);
    fftw_free(real_buf);
  }

  ~GridData() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
  }

  GridData(const GridData&) = delete;
  GridData& operator=(const GridData&) = delete;
};

}  // namespace detail

Grid Grid::make(int n, double period) {
  if (n < 8 || n % 2 != 0) {
    throw ConfigError("number of points must be even and at least 8, got " + std::to_string(n),
                      "grid.n");
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ConfigError("period must be positive and finite", "grid.period");
  }
  return Grid(std::make_shared<const detail::GridData>(n, period));
}

int Grid::size() const noexcept { return data_->n; }
double Grid::period() const noexcept { return data_->period; }
double Grid::dk() const noexcept { return 2.0 * std::numbers::pi / data_->period; }
double Grid::k_max() const noexcept { return dk() * (data_->n / 2); }
std::span<const double> Grid::nodes() const noexcept { return data_->nodes; }
std::span<const double> Grid::wavenumbers() const noexcept { return data_->wavenumbers; }

void Grid::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  const int n = data_->n;
  if (static_cast<int>(in.size()) != n || static_cast<int>(out.size()) != half_size()) {
    throw std::invalid_argument("Grid::forward: length mismatch with grid");
  }
  // r2c does not modify its input.
  fftw_execute_dft_r2c(data_->r2c, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / n;
  for (auto& c : out) c *= scale;
}

void Grid::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
  const int n = data_->n;
  if (static_cast<int>(in.size()) != half_size() || static_cast<int>(out.size()) != n) {
    throw std::invalid_argument("Grid::inverse: length mismatch with grid");
  }
  // c2r overwrites its input; work on a copy with the self-conjugate modes made real.
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  scratch.front().imag(0.0);
  scratch.back().imag(0.0);
  fftw_execute_dft_c2r(data_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

bool operator==(const Grid& lhs, const Grid& rhs) noexcept {
  return lhs.data_ == rhs.data_ ||
         (lhs.data_->n == rhs.data_->n && lhs.data_->period == rhs.data_->period);
}

}  // namespace gch

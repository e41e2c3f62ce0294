#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gch/errors.hpp"
#include "gch/operators.hpp"
#include "gch/sampling.hpp"

using namespace gch;

namespace {

FieldState wave(const Grid& g, double (*f)(double), double k, double amp = 1.0) {
  return FieldState::sample(g, [=](double x) { return amp * f(k * x); });
}

FieldState constant(const Grid& g, double c) {
  return FieldState::sample(g, [c](double) { return c; });
}

double rel(const FieldState& a, const FieldState& b) {
  const auto fam = NormFamily::bessel();
  return sobolev_norm(a - b, 0, fam) / sobolev_norm(b, 0, fam);
}

}  // namespace

TEST_CASE("l symbols of presets") {
  CHECK(l_symbol(OperatorL::preset("identity"), 3) == 1);
  const auto h = OperatorL::preset("helmholtz");
  CHECK(l_symbol(h, 1) == doctest::Approx(2));
  for (double k : {0.0, 1.0, 2.0, 5.0})
    CHECK(h.momentum_symbol(k) == doctest::Approx(1 + k * k + k * k * k * k));
  CHECK(l_symbol(OperatorL::preset("example-vi"), 0) == doctest::Approx(2));
}

TEST_CASE("momentum and inverse") {
  const Grid g = Grid::make(32);
  const auto id = OperatorL::preset("identity");
  const auto h = OperatorL::preset("helmholtz");
  const FieldState c = wave(g, std::cos, 1);
  CHECK(max_abs(momentum(c, id) - wave(g, std::cos, 1, 2)) <= 1e-13);
  CHECK(max_abs(momentum(c, h) - wave(g, std::cos, 1, 3)) <= 1e-15 * h.momentum_symbol(g.k_max()));
  CHECK(max_abs(momentum(constant(g, 1.7), h) - constant(g, 1.7)) <= 1e-14);
  CHECK(max_abs(inverse_helmholtz(wave(g, std::sin, 2), id) - wave(g, std::sin, 2, 0.2)) <= 1e-14);
  CHECK(max_abs(inverse_helmholtz(wave(g, std::cos, 1, 2), id) - c) <= 1e-14);
  CHECK(max_abs(inverse_helmholtz(constant(g, -3), h) - constant(g, -3)) <= 1e-14);

  // Grid roundoff at mode k is magnified by the symbol 1 + k^2 l(k) on the way
  // back, so the tolerance scales with its largest value.
  for (int n : {16, 128}) {
    const Grid big = Grid::make(n);
    FieldSampler sampler(2);
    for (const auto& name : OperatorL::preset_names()) {
      const auto L = OperatorL::preset(name);
      const double tol = std::max(1e-12, 1e-15 * L.momentum_symbol(big.k_max()));
      const FieldState u = sampler.next(big.dealias_cutoff(), 2).on(big);
      CHECK(rel(momentum(inverse_helmholtz(u, L), L), u) <= tol);
      CHECK(rel(inverse_helmholtz(momentum(u, L), L), u) <= tol);
    }
  }
}

TEST_CASE("commutator worked values") {
  const Grid g = Grid::make(32);
  const auto id = OperatorL::preset("identity");
  const FieldState c = wave(g, std::cos, 1);
  const FieldState ms = wave(g, std::sin, 1, -1);
  // u v = -sin(2x)/2; d_xx(u v) = 2 sin 2x; u d_xx v = cos x sin x = sin(2x)/2.
  CHECK(max_abs(commutator_L(c, ms, id) - wave(g, std::sin, 2, 1.5)) <= 1e-10);
  FieldSampler sampler(4);
  const FieldState v = sampler.next(8, 2).on(g);
  CHECK(max_abs(commutator_L(constant(g, 2.5), v, OperatorL::preset("helmholtz"))) <= 1e-12);
  CHECK(max_abs(commutator_L(c, FieldState::zeros(g), id)) == 0.0);
}

TEST_CASE("right-hand sides worked values") {
  const Grid g = Grid::make(32);
  const auto ch = ModelParams::camassa_holm();
  const FieldState c = wave(g, std::cos, 1);
  const FieldState sin2 = wave(g, std::sin, 2);

  CHECK(max_abs(rhs_u_direct(FieldState::zeros(g), ch)) == 0.0);
  CHECK(max_abs(rhs_u_direct(constant(g, 0.3), ch)) <= 1e-14);
  CHECK(max_abs(rhs_u_direct(c, ch) - 0.6 * sin2) <= 1e-10);

  CHECK(max_abs(rhs_m(FieldState::zeros(g), ch)) == 0.0);
  CHECK(max_abs(rhs_m(wave(g, std::cos, 1, 2), ch) - 3.0 * sin2) <= 1e-10);
  CHECK(max_abs(rhs_m(constant(g, 1.1), ch)) <= 1e-14);

  CHECK(max_abs(rhs_ch_reference(FieldState::zeros(g))) == 0.0);
  CHECK(max_abs(rhs_ch_reference(c) - 0.6 * sin2) <= 1e-10);
  CHECK(max_abs(rhs_ch_reference(constant(g, -0.4))) <= 1e-14);

  FieldState bad = c;
  bad.u[3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(rhs_u_direct(bad, ch), NonFiniteError);
}

TEST_CASE("quasi-linear operator worked values") {
  const Grid g = Grid::make(32);
  const auto ch = ModelParams::camassa_holm();
  const FieldState c = wave(g, std::cos, 1);
  CHECK(max_abs(apply_A(c, c, ch) - wave(g, std::sin, 2, -1.2)) <= 1e-10);
  CHECK(max_abs(apply_A(c, FieldState::zeros(g), ch)) == 0.0);

  ModelParams p{1.5, 0.7, OperatorL::preset("example-vi")};
  FieldSampler sampler(6);
  const FieldState w = sampler.next(8, 2).on(g);
  const FieldState expect = (p.a + p.b) * 2.0 * derivative(w, 1);
  CHECK(max_abs(apply_A(constant(g, 2.0), w, p) - expect) <= 1e-12 * max_abs(expect));

  CHECK(quasilinear_residual(FieldState::zeros(g), ch) == 0.0);
  CHECK(quasilinear_residual(constant(g, 1.0), ch) <= 1e-13);
  CHECK(quasilinear_residual(c, ch) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("CH reduction and form consistency on random fields") {
  const Grid g = Grid::make(256);
  FieldSampler sampler(8);
  const auto ch = ModelParams::camassa_holm();
  for (int i = 0; i < 10; ++i) {
    const FieldState u = sampler.next(64, 2).on(g);
    CHECK(rel(rhs_u_direct(u, ch), rhs_ch_reference(u)) <= 1e-10);
  }
  for (const auto& name : OperatorL::preset_names()) {
    ModelParams p{3.0, 1.0, OperatorL::preset(name)};
    for (int i = 0; i < 3; ++i) {
      const FieldState u = sampler.next(40, 2).on(g);
      CHECK(rel(momentum(rhs_u_direct(u, p), p.L), rhs_m(momentum(u, p.L), p)) <= 1e-10);
    }
  }
}

TEST_CASE("A is linear in u") {
  const Grid g = Grid::make(128);
  FieldSampler sampler(10);
  ModelParams p{2.0, 1.0, OperatorL::preset("helmholtz")};
  const Spectrum u = sampler.next(16, 2).spectrum(g), v = sampler.next(16, 2).spectrum(g),
                 w = sampler.next(16, 2).spectrum(g);
  const Spectrum split = apply_A(u, w, p) - apply_A(v, w, p);
  const Spectrum joint = apply_A(u - v, w, p);
  const auto fam = NormFamily::bessel();
  CHECK(sobolev_norm(split - joint, 0, fam) <= 1e-13 * sobolev_norm(joint, 0, fam));
}

TEST_CASE("parameter validation") {
  const Grid g = Grid::make(16);
  ModelParams p;
  p.a = 0;
  try {
    p.validate(g);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "params.a");
  }
  p.a = 1;
  p.b = -1;
  try {
    p.validate(g);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "params.b");
  }
}

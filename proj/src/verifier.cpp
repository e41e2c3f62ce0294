#include "gch/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gch/errors.hpp"

namespace gch {

namespace {

using cplx = std::complex<double>;

double l2_norm(const FieldState& f) { return std::sqrt(inner_l2(f, f)); }

FieldState constant_field(const Grid& grid, double c) {
  return FieldState::sample(grid, [c](double) { return c; });
}

Spectrum constant_spectrum(const Grid& grid, double c) {
  Spectrum out(grid);
  out.half()[0] = c;
  return out;
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

// Evaluates `ratio(grid, sampler)` for every sample at resolutions n and 2n.
// The sampler is reseeded per resolution so both see the same fields.
template <typename RatioFn>
void resolution_sweep(InequalityReport& report, const SuiteOptions& opts, RatioFn&& ratio) {
  const Grid base = Grid::make(opts.n, opts.period);
  opts.samples.validate(base);
  for (int n : {opts.n, 2 * opts.n}) {
    const Grid grid = n == opts.n ? base : Grid::make(n, opts.period);
    FieldSampler sampler(opts.samples.seed);
    std::vector<double> ratios;
    ratios.reserve(opts.samples.count);
    for (int i = 0; i < opts.samples.count; ++i) ratios.push_back(ratio(grid, sampler));
    report.resolutions.push_back(n);
    report.max_ratio.push_back(max_of(ratios));
    report.ratios.push_back(std::move(ratios));
  }
}

// Shared pass/fail logic: finite ratios, stable maxima, vanishing degenerate case.
void assess(InequalityReport& report) {
  for (std::size_t r = 0; r < report.ratios.size(); ++r) {
    if (!all_finite(report.ratios[r])) {
      report.failures.push_back("non-finite ratio at n = " + std::to_string(report.resolutions[r]));
    }
  }
  if (report.max_ratio.size() >= 2) {
    const auto [lo, hi] = std::minmax_element(report.max_ratio.begin(), report.max_ratio.end());
    report.stability = *lo > 0.0 ? *hi / *lo : (*hi > 0.0 ? INFINITY : 1.0);
    if (!(report.stability <= kStabilityFactor)) {
      std::ostringstream os;
      os << "maximum ratio unstable under grid doubling (factor " << report.stability << ")";
      report.failures.push_back(os.str());
    }
  }
  if (!(std::abs(report.degenerate) <= kDegenerateTolerance)) {
    std::ostringstream os;
    os << "degenerate case does not vanish (" << report.degenerate << ")";
    report.failures.push_back(os.str());
  }
}

std::vector<OperatorL> isometry_operators(const ModelParams& params) {
  std::vector<OperatorL> ops;
  for (const auto& name : OperatorL::preset_names()) ops.push_back(OperatorL::preset(name));
  const bool listed = std::any_of(ops.begin(), ops.end(),
                                  [&](const OperatorL& op) { return op.name() == params.L.name(); });
  if (!listed) ops.push_back(params.L);
  return ops;
}

}  // namespace

void validate_commutator_parameters(double n, double s, double sigma) {
  if (!(n > 0.0)) throw ConfigError("commutator order n must be positive", "commutator.n");
  if (!(s >= 0.0)) throw ConfigError("commutator regularity s must be >= 0", "commutator.s");
  if (!(1.5 < s + n && s + n <= sigma)) {
    std::ostringstream os;
    os << "commutator estimate requires 3/2 < s+n <= sigma, got s+n = " << s + n
       << ", sigma = " << sigma;
    throw ConfigError(os.str(), "commutator");
  }
}

double commutator_estimate_ratio(const Spectrum& f, const Spectrum& g, double n, double s,
                                 double sigma) {
  validate_commutator_parameters(n, s, sigma);
  const Symbol lambda_n = [n](double k) { return cplx(std::pow(1.0 + k * k, 0.5 * n), 0.0); };
  const Spectrum commutator =
      apply_symbol(galerkin_product(f, g), lambda_n) - galerkin_product(f, apply_symbol(g, lambda_n));
  const auto bessel = NormFamily::bessel();
  const double denom = sobolev_norm(f, sigma, bessel) * sobolev_norm(g, s + n - 1.0, bessel);
  if (denom == 0.0) return 0.0;
  return sobolev_norm(commutator, s, bessel) / denom;
}

double commutator_estimate_ratio(const FieldState& f, const FieldState& g, double n, double s,
                                 double sigma) {
  return commutator_estimate_ratio(to_spectrum(f), to_spectrum(g), n, s, sigma);
}

double accretivity_pairing(const FieldState& u, const FieldState& w, const ModelParams& params) {
  return inner_l2(apply_A(u, w, params), w);
}

double accretivity_ratio(const Spectrum& u, const Spectrum& w, const ModelParams& params, double s) {
  const auto family = NormFamily::gamma_weighted(params.L);
  const double wn = sobolev_norm(w, s - 1.0, family);
  if (wn == 0.0) return 0.0;
  return -sobolev_inner(apply_A(u, w, params), w, s - 1.0, family) / (wn * wn);
}

double accretivity_ratio(const FieldState& u, const FieldState& w, const ModelParams& params,
                         double s) {
  return accretivity_ratio(to_spectrum(u), to_spectrum(w), params, s);
}

double lipschitz_A_ratio(const Spectrum& u, const Spectrum& v, const Spectrum& w,
                         const ModelParams& params, double s) {
  const auto family = NormFamily::gamma_weighted(params.L);
  const double denom = sobolev_norm(u - v, s - 1.0, family) * sobolev_norm(w, s, family);
  if (denom == 0.0) throw std::domain_error("lipschitz_A_ratio: zero denominator");
  return sobolev_norm(apply_A(u, w, params) - apply_A(v, w, params), s - 1.0, family) /
         denom;
}

double lipschitz_A_ratio(const FieldState& u, const FieldState& v, const FieldState& w,
                         const ModelParams& params, double s) {
  return lipschitz_A_ratio(to_spectrum(u), to_spectrum(v), to_spectrum(w), params, s);
}

Spectrum b_operator_apply(const Spectrum& u, const Spectrum& w, const ModelParams& params) {
  const Spectrum conjugated =
      gamma_power(apply_A(u, gamma_power(w, -1.0, params.L), params), 1.0, params.L);
  return conjugated - apply_A(u, w, params);
}

FieldState b_operator_apply(const FieldState& u, const FieldState& w, const ModelParams& params) {
  return to_field(b_operator_apply(to_spectrum(u), to_spectrum(w), params), u.time);
}

double frozen_growth(const FieldState& u, const FieldState& w0, const ModelParams& params, double t,
                     double dt) {
  if (!(t > 0.0) || !(dt > 0.0)) throw ConfigError("frozen growth needs t > 0 and dt > 0", "frozen");
  const double start = l2_norm(w0);
  if (start == 0.0) return 1.0;
  const Rhs rhs = [&](const FieldState& w) { return -1.0 * apply_A(u, w, params); };
  const auto steps = static_cast<std::size_t>(std::ceil(t / dt - 1e-9));
  const double h = t / static_cast<double>(steps);
  FieldState w = w0;
  w.time = 0.0;
  for (std::size_t i = 0; i < steps; ++i) w = rk4_step(w, h, rhs);
  return l2_norm(w) / start;
}

ContinuousDependence continuous_dependence(const FieldState& u0, const FieldState& delta,
                                           const ModelParams& params, double t, double dt, double s,
                                           std::vector<double> epsilons) {
  ContinuousDependence out;
  out.epsilons = std::move(epsilons);
  const auto family = NormFamily::gamma_weighted(params.L);

  auto evolve = [&](const FieldState& start) -> std::optional<FieldState> {
    if (t == 0.0) return start;
    StepperConfig stepper;
    stepper.dt = std::min(dt, t);
    stepper.t_end = t;
    const RunResult run = integrate(start, params, stepper, MonitorConfig{});
    if (run.stop_reason != StopReason::ReachedTEnd) return std::nullopt;
    return run.final_state;
  };

  const auto base = evolve(u0);
  if (!base) {
    out.conclusive = false;
    return out;
  }
  for (double eps : out.epsilons) {
    const auto perturbed = evolve(u0 + eps * delta);
    if (!perturbed) {
      out.conclusive = false;
      out.ratios.push_back(NAN);
      continue;
    }
    out.ratios.push_back(sobolev_norm(*perturbed - *base, s, family) / eps);
  }
  if (out.conclusive && !out.ratios.empty()) {
    const auto [lo, hi] = std::minmax_element(out.ratios.begin(), out.ratios.end());
    out.variation = *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
  }
  return out;
}

nlohmann::json to_json(const InequalityReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["family"] = report.family;
  j["parameters"] = report.parameters;
  j["resolutions"] = report.resolutions;
  j["ratios"] = report.ratios;
  j["max_ratio"] = report.max_ratio;
  j["stability"] = report.stability;
  j["degenerate"] = report.degenerate;
  j["measured"] = report.measured;
  j["passed"] = report.passed();
  j["failures"] = report.failures;
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

InequalityReport commutator_suite(const SuiteOptions& opts) {
  validate_commutator_parameters(opts.comm_n, opts.comm_s, opts.comm_sigma);
  InequalityReport report;
  report.name = "commutator";
  report.family = NormFamily::bessel().label();
  report.parameters = {{"n", opts.comm_n}, {"s", opts.comm_s}, {"sigma", opts.comm_sigma},
                       {"samples", opts.samples.count}, {"band", opts.samples.band},
                       {"decay", opts.samples.decay}};
  const auto& spec = opts.samples;
  resolution_sweep(report, opts, [&](const Grid& grid, FieldSampler& sampler) {
    const Spectrum f = sampler.next(spec.band, spec.decay).spectrum(grid);
    const Spectrum g = sampler.next(spec.band, spec.decay).spectrum(grid);
    return commutator_estimate_ratio(f, g, opts.comm_n, opts.comm_s, opts.comm_sigma);
  });

  const Grid grid = Grid::make(opts.n, opts.period);
  FieldSampler sampler(spec.seed);
  const Spectrum g = sampler.next(spec.band, spec.decay).spectrum(grid);
  report.degenerate = commutator_estimate_ratio(constant_spectrum(grid, 1.0), g, opts.comm_n,
                                                opts.comm_s, opts.comm_sigma);
  report.measured["c"] = max_of(report.max_ratio);
  assess(report);
  return report;
}

InequalityReport accretivity_suite(const SuiteOptions& opts, const ModelParams& params, double s) {
  InequalityReport report;
  report.name = "accretivity";
  report.family = NormFamily::gamma_weighted(params.L).label();
  report.parameters = {{"s", s}, {"a", params.a}, {"b", params.b}, {"p", params.L.order()},
                       {"samples", opts.samples.count}, {"band", opts.samples.band},
                       {"decay", opts.samples.decay}};
  const auto& spec = opts.samples;
  const auto family = NormFamily::gamma_weighted(params.L);
  // Ratios are |(A(u)w, w)_{s-1}| / ||w||^2_{s-1}; kappa normalizes by ||u||_s.
  double kappa = 0.0;
  double max_signed = -INFINITY;
  resolution_sweep(report, opts, [&](const Grid& grid, FieldSampler& sampler) {
    const Spectrum u = sampler.next(spec.band, spec.decay).spectrum(grid);
    const Spectrum w = sampler.next(spec.band, spec.decay).spectrum(grid);
    const double signed_ratio = accretivity_ratio(u, w, params, s);
    max_signed = std::max(max_signed, signed_ratio);
    const double un = sobolev_norm(u, s, family);
    if (un > 0.0) kappa = std::max(kappa, std::abs(signed_ratio) / un);
    return std::abs(signed_ratio);
  });

  const Grid grid = Grid::make(opts.n, opts.period);
  FieldSampler sampler(spec.seed);
  sampler.next(spec.band, spec.decay);
  const Spectrum w = sampler.next(spec.band, spec.decay).spectrum(grid);
  report.degenerate = accretivity_ratio(constant_spectrum(grid, 1.0), w, params, s);
  report.measured["kappa"] = kappa;
  report.measured["beta_max"] = max_of(report.max_ratio);
  report.measured["max_signed_ratio"] = std::isfinite(max_signed) ? max_signed : 0.0;
  assess(report);
  return report;
}

InequalityReport lipschitz_suite(const SuiteOptions& opts, const ModelParams& params) {
  const double s = opts.regularity(params.L);
  InequalityReport report;
  report.name = "lipschitz";
  report.family = NormFamily::gamma_weighted(params.L).label();
  report.parameters = {{"s", s}, {"a", params.a}, {"b", params.b}, {"p", params.L.order()},
                       {"samples", opts.samples.count}, {"band", opts.samples.band},
                       {"decay", opts.samples.decay}};
  const auto& spec = opts.samples;
  const auto family = NormFamily::gamma_weighted(params.L);
  double linearity_gap = 0.0;
  resolution_sweep(report, opts, [&](const Grid& grid, FieldSampler& sampler) {
    const Spectrum u = sampler.next(spec.band, spec.decay).spectrum(grid);
    const Spectrum v = sampler.next(spec.band, spec.decay).spectrum(grid);
    const Spectrum w = sampler.next(spec.band, spec.decay).spectrum(grid);
    // Linearity of A in u: (A(u) - A(v)) w = A(u - v) w.
    const Spectrum split = apply_A(u, w, params) - apply_A(v, w, params);
    const Spectrum joint = apply_A(u - v, w, params);
    const double scale = std::max(sobolev_norm(joint, s - 1.0, family), 1e-300);
    linearity_gap = std::max(linearity_gap, sobolev_norm(split - joint, s - 1.0, family) / scale);
    return lipschitz_A_ratio(u, v, w, params, s);
  });

  const Grid grid = Grid::make(opts.n, opts.period);
  FieldSampler sampler(spec.seed);
  const Spectrum u = sampler.next(spec.band, spec.decay).spectrum(grid);
  const Spectrum w = sampler.next(spec.band, spec.decay).spectrum(grid);
  report.degenerate = sobolev_norm(apply_A(u, w, params) - apply_A(u, w, params), s - 1.0,
                                   family);
  report.measured["lambda1"] = max_of(report.max_ratio);
  report.measured["linearity_gap"] = linearity_gap;
  assess(report);
  if (!(linearity_gap <= 1e-10)) report.failures.push_back("A(u) w is not linear in u");
  return report;
}

InequalityReport b_bound_suite(const SuiteOptions& opts, const ModelParams& params) {
  const double s = opts.regularity(params.L);
  InequalityReport report;
  report.name = "bbound";
  report.family = NormFamily::gamma_weighted(params.L).label();
  report.parameters = {{"s", s}, {"a", params.a}, {"b", params.b}, {"p", params.L.order()},
                       {"samples", opts.samples.count}, {"band", opts.samples.band},
                       {"decay", opts.samples.decay}};
  const auto& spec = opts.samples;
  const auto family = NormFamily::gamma_weighted(params.L);
  auto ratio_of = [&](const Spectrum& u, const Spectrum& w) {
    const double wn = sobolev_norm(w, s - 1.0, family);
    return wn > 0.0 ? sobolev_norm(b_operator_apply(u, w, params), s - 1.0, family) / wn : 0.0;
  };
  resolution_sweep(report, opts, [&](const Grid& grid, FieldSampler& sampler) {
    const Spectrum u = sampler.next(spec.band, spec.decay).spectrum(grid);
    const Spectrum w = sampler.next(spec.band, spec.decay).spectrum(grid);
    return ratio_of(u, w);
  });

  const Grid grid = Grid::make(opts.n, opts.period);
  FieldSampler sampler(spec.seed);
  sampler.next(spec.band, spec.decay);
  const Spectrum w = sampler.next(spec.band, spec.decay).spectrum(grid);
  report.degenerate = ratio_of(constant_spectrum(grid, 1.0), w);
  report.measured["lambda2"] = max_of(report.max_ratio);
  assess(report);
  return report;
}

InequalityReport isometry_suite(const SuiteOptions& opts, const ModelParams& params) {
  InequalityReport report;
  report.name = "isometry";
  report.family = "gamma-weighted";
  report.parameters = {{"samples", opts.samples.count}, {"band", opts.samples.band},
                       {"decay", opts.samples.decay}, {"n", opts.n}};
  const Grid grid = Grid::make(opts.n, opts.period);
  opts.samples.validate(grid);
  report.resolutions.push_back(opts.n);

  std::vector<double> errors;
  for (const auto& L : isometry_operators(params)) {
    const double s = opts.regularity(L);
    const auto family = NormFamily::gamma_weighted(L);
    FieldSampler sampler(opts.samples.seed);
    double worst = 0.0;
    for (int i = 0; i < opts.samples.count; ++i) {
      const Spectrum u = sampler.next(opts.samples.band, opts.samples.decay).spectrum(grid);
      const double lhs = sobolev_norm(gamma_power(u, 1.0, L), s - 1.0, family);
      const double rhs = sobolev_norm(u, s, family);
      const double err = rhs > 0.0 ? std::abs(lhs - rhs) / rhs : std::abs(lhs);
      errors.push_back(err);
      worst = std::max(worst, err);
    }
    report.measured["max_relative_error:" + L.name()] = worst;
  }
  report.max_ratio.push_back(max_of(errors));
  report.ratios.push_back(std::move(errors));
  if (!all_finite(report.ratios.front())) report.failures.push_back("non-finite isometry error");
  if (!(report.max_ratio.front() <= kIsometryTolerance)) {
    std::ostringstream os;
    os << "isometry violated, max relative error " << report.max_ratio.front();
    report.failures.push_back(os.str());
  }
  return report;
}

InequalityReport frozen_growth_suite(const SuiteOptions& opts, const ModelParams& params) {
  InequalityReport report;
  report.name = "frozen-growth";
  report.family = "L2";
  report.parameters = {{"t", opts.frozen_t}, {"dt", opts.frozen_dt}, {"samples", opts.frozen_count},
                       {"band", opts.samples.band}, {"decay", opts.samples.decay},
                       {"margin", kGrowthMargin}};

  // L2 pairing constant: the accretivity suite with s - 1 = 0.
  const InequalityReport pairing = accretivity_suite(opts, params, 1.0);
  const double kappa = pairing.measured.at("kappa");
  report.measured["kappa_l2"] = kappa;

  const Grid grid = Grid::make(opts.n, opts.period);
  opts.samples.validate(grid);
  const auto family = NormFamily::gamma_weighted(params.L);

  // Constant u: pure transport, the L2 norm is conserved.
  FieldSampler sampler(opts.samples.seed + 1);
  const FieldState w_const = sampler.next(opts.samples.band, opts.samples.decay).on(grid);
  const double transport = frozen_growth(constant_field(grid, 1.0), w_const, params, opts.frozen_t,
                                         opts.frozen_dt);
  report.degenerate = transport - 1.0;
  report.measured["constant_u_ratio"] = transport;
  if (!(std::abs(transport - 1.0) <= 1e-10)) {
    std::ostringstream os;
    os << "constant-coefficient transport changed the L2 norm by " << transport - 1.0;
    report.failures.push_back(os.str());
  }

  report.resolutions.push_back(opts.n);
  std::vector<double> growth;
  double worst_margin = 0.0;
  double max_log = -INFINITY;
  for (int i = 0; i < opts.frozen_count; ++i) {
    const FieldState u = sampler.next(opts.samples.band, opts.samples.decay).on(grid);
    const FieldState w0 = sampler.next(opts.samples.band, opts.samples.decay).on(grid);
    const double ratio = frozen_growth(u, w0, params, opts.frozen_t, opts.frozen_dt);
    const double g = std::log(ratio);
    const double bound = kGrowthMargin * kappa * sobolev_norm(u, 1.0, family) * opts.frozen_t;
    growth.push_back(ratio);
    max_log = std::max(max_log, g);
    worst_margin = std::max(worst_margin, bound > 0.0 ? g / bound : (g > 0.0 ? INFINITY : 0.0));
  }
  report.measured["max_log_growth"] = std::isfinite(max_log) ? max_log : 0.0;
  report.measured["max_growth_to_bound"] = worst_margin;
  report.max_ratio.push_back(growth.empty() ? 0.0 : *std::max_element(growth.begin(), growth.end()));
  if (!all_finite(growth)) report.failures.push_back("non-finite growth");
  if (!(worst_margin <= 1.0)) {
    std::ostringstream os;
    os << "log growth exceeds " << kGrowthMargin << " * kappa * ||u||_1 * t (worst fraction "
       << worst_margin << ")";
    report.failures.push_back(os.str());
  }
  report.ratios.push_back(std::move(growth));
  return report;
}

InequalityReport continuous_dependence_suite(const SuiteOptions& opts, const ModelParams& params) {
  const double s = opts.regularity(params.L);
  InequalityReport report;
  report.name = "continuous-dependence";
  report.family = NormFamily::gamma_weighted(params.L).label();
  report.parameters = {{"s", s}, {"t", opts.cd_t}, {"dt", opts.cd_dt}, {"n", opts.n}};
  const Grid grid = Grid::make(opts.n, opts.period);
  opts.samples.validate(grid);

  const double dk = grid.dk();
  const FieldState u0 = FieldState::sample(grid, [dk](double x) { return std::cos(dk * x); });
  FieldSampler sampler(opts.samples.seed);
  FieldState delta = sampler.next(opts.samples.band, opts.samples.decay).on(grid);
  delta = (1.0 / std::sqrt(inner_l2(delta, delta))) * delta;

  const ContinuousDependence cd = continuous_dependence(u0, delta, params, opts.cd_t, opts.cd_dt, s);
  report.resolutions.push_back(opts.n);
  report.ratios.push_back(cd.ratios);
  report.max_ratio.push_back(max_of(cd.ratios));
  report.measured["variation"] = cd.variation;
  for (std::size_t i = 0; i < cd.epsilons.size(); ++i) {
    std::ostringstream key;
    key << "ratio_eps_" << cd.epsilons[i];
    report.measured[key.str()] = i < cd.ratios.size() ? cd.ratios[i] : NAN;
  }
  if (!cd.conclusive) report.failures.push_back("inconclusive: a trajectory stopped early");
  else if (!(cd.variation < kDependenceVariation)) {
    std::ostringstream os;
    os << "difference-to-epsilon ratio varies by " << cd.variation;
    report.failures.push_back(os.str());
  }
  return report;
}

InequalityReport zero_source_report() {
  InequalityReport report;
  report.name = "zero-source";
  report.family = "none";
  report.note = "source term f(u) = 0: its boundedness and Lipschitz conditions hold trivially";
  return report;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "commutator", "accretivity", "lipschitz", "bbound", "frozen-growth",
      "continuous-dependence", "isometry", "zero-source"};
  return names;
}

std::vector<InequalityReport> run_suite(std::string_view name, const SuiteOptions& opts,
                                        const ModelParams& params) {
  params.validate(Grid::make(opts.n, opts.period));
  if (name == "all") {
    std::vector<InequalityReport> all;
    for (const auto& n : suite_names()) {
      auto one = run_suite(n, opts, params);
      all.insert(all.end(), one.begin(), one.end());
    }
    return all;
  }
  if (name == "commutator") return {commutator_suite(opts)};
  if (name == "accretivity") return {accretivity_suite(opts, params, opts.regularity(params.L))};
  if (name == "lipschitz") return {lipschitz_suite(opts, params)};
  if (name == "bbound") return {b_bound_suite(opts, params)};
  if (name == "frozen-growth") return {frozen_growth_suite(opts, params)};
  if (name == "continuous-dependence") return {continuous_dependence_suite(opts, params)};
  if (name == "isometry") return {isometry_suite(opts, params)};
  if (name == "zero-source") return {zero_source_report()};
  throw ConfigError("unknown suite '" + std::string(name) + "'", "suite");
}

}  // namespace gch

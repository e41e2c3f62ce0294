#include "gch/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>

#include "gch/errors.hpp"
#include "gch/io.hpp"

namespace gch {

namespace {

RunConfig resolve_config(const CommandOptions& opts) {
  RunConfig cfg = opts.config ? load_config(*opts.config) : RunConfig{};
  if (!opts.config) cfg.validate();
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.out) cfg.output_dir = *opts.out;
  return cfg;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

void write_json(const nlohmann::json& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string snapshot_name(std::size_t step) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "snapshot_%06zu.csv", step);
  return buf;
}

// Runs `body`, mapping the error taxonomy onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
  } catch (const NonFiniteError& e) {
    err << "non-finite values: " << e.what() << '\n';
    return exit_code::kNonFinite;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return exit_code::kError;
}

double l2_norm(const FieldState& f) { return std::sqrt(inner_l2(f, f)); }

}  // namespace

FieldState manufactured_solution(const Grid& grid, const ManufacturedSpec& spec, double t) {
  const double k = spec.wavenumber * grid.dk();
  return FieldState::sample(
      grid, [&](double x) { return spec.amplitude * std::cos(k * (x - spec.speed * t)); }, t);
}

Forcing manufactured_forcing(const Grid& grid, const ModelParams& params, const ManufacturedSpec& spec) {
  const double k = spec.wavenumber * grid.dk();
  return [params, spec, k](const Grid& g, double t) {
    const FieldState ustar = manufactured_solution(g, spec, t);
    const FieldState ut = FieldState::sample(
        g, [&](double x) { return spec.amplitude * k * spec.speed * std::sin(k * (x - spec.speed * t)); },
        t);
    return ut - rhs_u_direct(ustar, params);
  };
}

ConvergenceStudy manufactured_convergence(const Grid& grid, const ModelParams& params,
                                          const ManufacturedSpec& spec, double t_end, Form form) {
  if (spec.dt_sweep.size() < 3) {
    throw ConfigError("an order estimate needs at least three step sizes", "manufactured.dt_sweep");
  }
  // The quadratic nonlinearity doubles the wavenumber; both must survive dealiasing.
  if (2 * spec.wavenumber > grid.dealias_cutoff()) {
    throw ConfigError("unresolved spatial grid: manufactured solution aliases (need 2k <= n/3)",
                      "manufactured.wavenumber");
  }
  params.validate(grid);

  ConvergenceStudy study;
  study.dts = spec.dt_sweep;
  const Forcing forcing = manufactured_forcing(grid, params, spec);
  const FieldState exact = manufactured_solution(grid, spec, t_end);
  for (double dt : study.dts) {
    StepperConfig stepper;
    stepper.dt = dt;
    stepper.t_end = t_end;
    stepper.form = form;
    const RunResult run = integrate(manufactured_solution(grid, spec, 0.0), params, stepper,
                                    MonitorConfig{}, forcing);
    if (run.stop_reason != StopReason::ReachedTEnd) {
      throw NonFiniteError("manufactured run stopped early at t = " + std::to_string(run.stop_time));
    }
    study.errors.push_back(l2_norm(run.final_state - exact));
  }

  const bool at_floor = std::all_of(study.errors.begin(), study.errors.end(),
                                    [](double e) { return e <= kErrorFloor; });
  if (at_floor) {
    study.order = std::numeric_limits<double>::quiet_NaN();
    study.passed = true;
    return study;
  }
  for (std::size_t i = 0; i + 1 < study.dts.size(); ++i) {
    study.pairwise_orders.push_back(std::log(study.errors[i] / study.errors[i + 1]) /
                                    std::log(study.dts[i] / study.dts[i + 1]));
  }
  const std::size_t m = study.dts.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(study.dts[i]);
    const double y = std::log(std::max(study.errors[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  study.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  study.passed = study.order >= kOrderLow && study.order <= kOrderHigh;
  return study;
}

int cmd_run(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve_config(opts);
    const Grid grid = cfg.grid();
    const ModelParams params = cfg.params();
    ensure_directory(cfg.output_dir);

    const FieldState u0 = cfg.initial.build(grid);
    write_snapshot(u0, cfg.output_dir / snapshot_name(0));
    const auto stride = static_cast<std::size_t>(cfg.output_stride);
    const StepObserver observer = [&](const FieldState& u, std::size_t step) {
      if (step % stride == 0) write_snapshot(u, cfg.output_dir / snapshot_name(step));
    };

    const RunResult result = integrate(u0, params, cfg.time, cfg.monitor, {}, observer);
    write_timeseries(result.trail, cfg.output_dir / "timeseries.csv");
    write_snapshot(result.final_state, cfg.output_dir / "final.csv");

    if (!opts.quiet) {
      const DiagnosticsRecord d = conserved_quantities(result.final_state, params);
      out << "stop_reason " << to_string(result.stop_reason) << '\n'
          << "stop_time " << format_double(result.stop_time) << '\n'
          << "steps " << result.steps << '\n'
          << "mean_u " << format_double(d.mean_u) << '\n'
          << "mean_m " << format_double(d.mean_m) << '\n'
          << "energy " << format_double(d.energy) << '\n'
          << "norm_h1g " << format_double(d.norm_h1g) << '\n'
          << "min_slope " << format_double(d.min_slope) << '\n'
          << "max_abs_u " << format_double(d.max_abs_u) << '\n';
    }
    switch (result.stop_reason) {
      case StopReason::ReachedTEnd: return exit_code::kOk;
      case StopReason::WaveBreakingDetected: return exit_code::kWaveBreaking;
      case StopReason::NormCapExceeded: return exit_code::kNormCap;
      case StopReason::NonFinite: return exit_code::kNonFinite;
    }
    return exit_code::kError;
  });
}

int cmd_converge(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve_config(opts);
    const Grid grid = cfg.grid();
    const ConvergenceStudy study =
        manufactured_convergence(grid, cfg.params(), cfg.manufactured, cfg.time.t_end, cfg.time.form);

    ensure_directory(cfg.output_dir);
    const auto path = cfg.output_dir / "convergence.csv";
    std::ofstream table(path, std::ios::binary | std::ios::trunc);
    if (!table) throw IoError("cannot open '" + path.string() + "' for writing");
    table << "dt,error\n";
    for (std::size_t i = 0; i < study.dts.size(); ++i) {
      table << format_double(study.dts[i]) << ',' << format_double(study.errors[i]) << '\n';
    }
    if (!table) throw IoError("write failed for '" + path.string() + "'");

    if (!opts.quiet) {
      out << "dt error\n";
      for (std::size_t i = 0; i < study.dts.size(); ++i) {
        out << format_double(study.dts[i]) << ' ' << format_double(study.errors[i]) << '\n';
      }
      if (std::isnan(study.order)) {
        out << "observed_order n/a (errors at rounding floor)\n";
      } else {
        out << "observed_order " << format_double(study.order) << '\n';
      }
      out << (study.passed ? "PASS" : "FAIL") << " order in [" << kOrderLow << ", " << kOrderHigh << "]\n";
    }
    return study.passed ? exit_code::kOk : exit_code::kCheckFailed;
  });
}

int cmd_verify(const std::string& suite, const CommandOptions& opts, const VerifyOverrides& overrides,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve_config(opts);
    SuiteOptions so;
    so.n = overrides.n.value_or(cfg.n);
    so.period = cfg.period;
    so.samples.count = overrides.samples.value_or(cfg.samples.count);
    so.samples.band = overrides.band.value_or(cfg.samples.band);
    so.samples.decay = overrides.decay.value_or(cfg.samples.decay);
    so.samples.seed = cfg.seed;
    if (overrides.s) so.s = *overrides.s;
    so.comm_n = overrides.comm_n.value_or(so.comm_n);
    so.comm_s = overrides.comm_s.value_or(so.comm_s);
    so.comm_sigma = overrides.comm_sigma.value_or(so.comm_sigma);

    if (suite != "all" &&
        std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
      throw ConfigError("unknown suite '" + suite + "'", "suite");
    }
    if (suite == "commutator" || suite == "all") {
      validate_commutator_parameters(so.comm_n, so.comm_s, so.comm_sigma);
    }

    const auto reports = run_suite(suite, so, cfg.params());
    ensure_directory(cfg.output_dir);
    bool all_passed = true;
    for (const auto& r : reports) {
      write_json(to_json(r), cfg.output_dir / (r.name + ".json"));
      all_passed = all_passed && r.passed();
      if (!opts.quiet) {
        out << (r.passed() ? "PASS " : "FAIL ") << r.name;
        if (!r.max_ratio.empty()) {
          out << " max_ratio";
          for (double m : r.max_ratio) out << ' ' << format_double(m);
        }
        out << '\n';
        for (const auto& f : r.failures) out << "  " << f << '\n';
      }
    }
    return all_passed ? exit_code::kOk : exit_code::kCheckFailed;
  });
}

int cmd_compare_forms(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve_config(opts);
    const Grid grid = cfg.grid();
    const auto& cmp = cfg.compare;

    nlohmann::json report;
    report["a"] = cfg.a;
    report["b"] = cfg.b;
    report["n"] = cfg.n;
    report["seed"] = cfg.seed;
    report["presets"] = nlohmann::json::array();

    for (const auto& name : cmp.presets) {
      ModelParams params = cfg.params();
      params.L = OperatorL::preset(name);
      params.validate(grid);

      nlohmann::json entry;
      entry["operator"] = params.L.name();
      entry["p"] = params.L.order();

      nlohmann::json refs = nlohmann::json::object();
      for (const auto& field : cmp.reference_fields) {
        const FieldState u = field == "constant"
                                 ? FieldState::sample(grid, [](double) { return 1.0; })
                                 : FieldState::sample(grid, [&](double x) { return std::cos(grid.dk() * x); });
        refs[field] = quasilinear_residual(u, params);
      }
      entry["reference"] = refs;

      FieldSampler sampler(cfg.seed);
      std::vector<double> residuals;
      for (int i = 0; i < cmp.samples; ++i) {
        residuals.push_back(quasilinear_residual(sampler.next(cmp.band, cmp.decay).on(grid), params));
      }
      entry["samples"] = residuals;
      if (!residuals.empty()) {
        const auto [lo, hi] = std::minmax_element(residuals.begin(), residuals.end());
        entry["min"] = *lo;
        entry["max"] = *hi;
        entry["mean"] = std::accumulate(residuals.begin(), residuals.end(), 0.0) / residuals.size();
      }
      if (!opts.quiet) {
        out << std::left << std::setw(12) << params.L.name();
        for (const auto& [field, value] : refs.items()) out << ' ' << field << '=' << format_double(value.get<double>());
        if (!residuals.empty()) {
          out << " samples=" << residuals.size() << " min=" << format_double(entry["min"].get<double>())
              << " mean=" << format_double(entry["mean"].get<double>())
              << " max=" << format_double(entry["max"].get<double>());
        }
        out << '\n';
      }
      report["presets"].push_back(entry);
    }

    ensure_directory(cfg.output_dir);
    write_json(report, cfg.output_dir / "compare_forms.json");
    return exit_code::kOk;
  });
}

int cmd_presets(std::ostream& out) {
  out << "identity     L = 1            l(k) = 1            p = 0\n"
      << "alpha2       L = alpha^2      l(k) = 0.5          p = 0   (alpha2:<value> to override)\n"
      << "helmholtz    L = 1 - d_xx     l(k) = 1 + k^2      p = 2\n"
      << "example-vi   L = 2 - d_xx     l(k) = 2 + k^2      p = 2\n"
      << "bessel:<p>,<alpha2>           l(k) = alpha2 (1 + k^2)^(p/2)\n"
      << "poly:<c0>,<c1>,...            l(k) = sum_j c_j k^(2j)\n";
  return exit_code::kOk;
}

}  // namespace gch

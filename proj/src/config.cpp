#include "gch/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "gch/errors.hpp"

namespace gch {

namespace {

using nlohmann::json;

// Reads keys out of one JSON object and rejects whatever is left over.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError("expected an object", path_.empty() ? "config" : path_);
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) const { return node_.contains(key); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return node_.at(key);
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    if (!node_.contains(key)) return;
    seen_.insert(key);
    const json& v = node_.at(key);
    if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError("expected a string", field(key));
      out = v.get<std::string>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError("expected an integer", field(key));
      out = v.get<T>();
    } else {
      if (!v.is_number()) throw ConfigError("expected a number", field(key));
      out = v.get<T>();
    }
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError("unknown key", field(it.key()));
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename Fn>
void with_section(Section& parent, const std::string& key, Fn&& fn) {
  if (!parent.has(key)) return;
  Section child(parent.raw(key), parent.field(key));
  fn(child);
  child.finish();
}

std::vector<std::string> read_strings(Section& s, const std::string& key, std::vector<std::string> fallback) {
  if (!s.has(key)) return fallback;
  const json& v = s.raw(key);
  if (!v.is_array()) throw ConfigError("expected an array of strings", s.field(key));
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw ConfigError("expected an array of strings", s.field(key));
    out.push_back(item.get<std::string>());
  }
  return out;
}

Method parse_method(const std::string& s) {
  if (s == "rk4-fixed") return Method::Rk4Fixed;
  if (s == "rk4-doubling") return Method::Rk4Doubling;
  throw ConfigError("expected 'rk4-fixed' or 'rk4-doubling'", "time.method");
}

Form parse_form(const std::string& s) {
  if (s == "u-form") return Form::UForm;
  if (s == "m-form") return Form::MForm;
  throw ConfigError("expected 'u-form' or 'm-form'", "time.form");
}

}  // namespace

FieldState InitialSpec::build(const Grid& grid) const {
  const double dk = grid.dk();
  if (kind == "cosine") {
    return FieldState::sample(grid, [&](double x) {
      return offset + amplitude * std::cos(wavenumber * dk * x + phase);
    });
  }
  if (kind == "fourier-modes") {
    return FieldState::sample(grid, [&](double x) {
      double v = 0.0;
      for (const auto& m : modes) v += m.cos * std::cos(m.k * dk * x) + m.sin * std::sin(m.k * dk * x);
      return v;
    });
  }
  if (kind == "gaussian-bump") {
    const double c = std::isnan(center) ? 0.5 * grid.period() : center;
    const double w = std::isnan(width) ? grid.period() / 20.0 : width;
    return FieldState::sample(grid, [&](double x) {
      const double z = (x - c) / w;
      return amplitude * std::exp(-0.5 * z * z);
    });
  }
  throw ConfigError("unknown initial kind '" + kind + "'", "initial.kind");
}

Grid RunConfig::grid() const { return Grid::make(n, period); }

ModelParams RunConfig::params() const {
  ModelParams p;
  p.a = a;
  p.b = b;
  p.L = OperatorL::preset(operator_name);
  return p;
}

void RunConfig::validate() const {
  const Grid g = grid();
  params().validate(g);
  time.validate();
  monitor.validate();
  if (output_stride < 1) throw ConfigError("must be a positive integer", "output.stride");

  const int cutoff = g.dealias_cutoff();
  if (initial.kind == "cosine") {
    if (initial.wavenumber < 0 || initial.wavenumber > cutoff) {
      throw ConfigError("must lie in [0, n/3]", "initial.wavenumber");
    }
  } else if (initial.kind == "fourier-modes") {
    for (const auto& m : initial.modes) {
      if (m.k < 0 || m.k > cutoff) throw ConfigError("mode index must lie in [0, n/3]", "initial.modes");
    }
  } else if (initial.kind == "gaussian-bump") {
    if (!std::isnan(initial.width) && !(initial.width > 0.0)) {
      throw ConfigError("must be positive", "initial.width");
    }
  } else {
    throw ConfigError("expected 'cosine', 'fourier-modes' or 'gaussian-bump'", "initial.kind");
  }

  if (manufactured.wavenumber < 0) throw ConfigError("must be nonnegative", "manufactured.wavenumber");
  for (double dt : manufactured.dt_sweep) {
    if (!(dt > 0.0) || dt > time.t_end) {
      throw ConfigError("every step must be positive and at most time.t_end", "manufactured.dt_sweep");
    }
  }
  if (compare.samples < 0) throw ConfigError("must be nonnegative", "compare.samples");
  if (compare.band < 0 || compare.band > cutoff) throw ConfigError("must lie in [0, n/3]", "compare.band");
  if (!(compare.decay >= 2.0)) throw ConfigError("must be >= 2", "compare.decay");
  for (const auto& name : compare.presets) (void)OperatorL::preset(name);
  for (const auto& f : compare.reference_fields) {
    if (f != "constant" && f != "cosine") {
      throw ConfigError("expected 'constant' or 'cosine'", "compare.reference_fields");
    }
  }
  if (samples.count < 0) throw ConfigError("must be nonnegative", "samples.count");
  if (samples.band < 0 || samples.band > cutoff) throw ConfigError("must lie in [0, n/3]", "samples.band");
  if (!(samples.decay >= 2.0)) throw ConfigError("must be >= 2", "samples.decay");
}

RunConfig parse_config(const json& doc) {
  RunConfig cfg;
  Section root(doc, "");

  with_section(root, "grid", [&](Section& s) {
    s.read("n", cfg.n);
    s.read("period", cfg.period);
  });
  if (root.has("operator")) {
    const json& op = root.raw("operator");
    if (!op.is_string()) throw ConfigError("expected a preset name", "operator");
    cfg.operator_name = op.get<std::string>();
  }
  with_section(root, "params", [&](Section& s) {
    s.read("a", cfg.a);
    s.read("b", cfg.b);
  });
  with_section(root, "initial", [&](Section& s) {
    auto& init = cfg.initial;
    s.read("kind", init.kind);
    s.read("amplitude", init.amplitude);
    s.read("wavenumber", init.wavenumber);
    s.read("phase", init.phase);
    s.read("offset", init.offset);
    s.read("center", init.center);
    s.read("width", init.width);
    if (s.has("modes")) {
      const json& modes = s.raw("modes");
      if (!modes.is_array()) throw ConfigError("expected an array", s.field("modes"));
      for (std::size_t i = 0; i < modes.size(); ++i) {
        Section m(modes[i], s.field("modes") + "[" + std::to_string(i) + "]");
        FourierMode mode;
        m.read("k", mode.k);
        m.read("cos", mode.cos);
        m.read("sin", mode.sin);
        m.finish();
        init.modes.push_back(mode);
      }
    }
  });
  with_section(root, "time", [&](Section& s) {
    std::string method = "rk4-fixed";
    std::string form = "u-form";
    s.read("method", method);
    s.read("form", form);
    cfg.time.method = parse_method(method);
    cfg.time.form = parse_form(form);
    s.read("dt", cfg.time.dt);
    s.read("t_end", cfg.time.t_end);
    s.read("tolerance", cfg.time.tolerance);
  });
  with_section(root, "monitor", [&](Section& s) {
    s.read("slope_threshold", cfg.monitor.slope_threshold);
    s.read("norm_cap", cfg.monitor.norm_cap);
    s.read("check_stride", cfg.monitor.check_stride);
  });
  with_section(root, "output", [&](Section& s) {
    std::string dir = cfg.output_dir.string();
    s.read("directory", dir);
    cfg.output_dir = dir;
    s.read("stride", cfg.output_stride);
  });
  with_section(root, "manufactured", [&](Section& s) {
    s.read("amplitude", cfg.manufactured.amplitude);
    s.read("speed", cfg.manufactured.speed);
    s.read("wavenumber", cfg.manufactured.wavenumber);
    if (s.has("dt_sweep")) {
      const json& v = s.raw("dt_sweep");
      if (!v.is_array()) throw ConfigError("expected an array of numbers", s.field("dt_sweep"));
      cfg.manufactured.dt_sweep.clear();
      for (const auto& item : v) {
        if (!item.is_number()) throw ConfigError("expected an array of numbers", s.field("dt_sweep"));
        cfg.manufactured.dt_sweep.push_back(item.get<double>());
      }
    }
  });
  with_section(root, "compare", [&](Section& s) {
    s.read("samples", cfg.compare.samples);
    s.read("band", cfg.compare.band);
    s.read("decay", cfg.compare.decay);
    cfg.compare.presets = read_strings(s, "presets", cfg.compare.presets);
    cfg.compare.reference_fields = read_strings(s, "reference_fields", cfg.compare.reference_fields);
  });
  with_section(root, "samples", [&](Section& s) {
    s.read("count", cfg.samples.count);
    s.read("band", cfg.samples.band);
    s.read("decay", cfg.samples.decay);
  });
  if (root.has("seed")) {
    const json& v = root.raw("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ConfigError("expected a nonnegative integer", "seed");
    }
    cfg.seed = v.get<std::uint64_t>();
  }
  root.finish();
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON in '") + path.string() + "': " + e.what(), "config");
  }
  return parse_config(doc);
}

}  // namespace gch

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gch/commands.hpp"
#include "gch/errors.hpp"

using namespace gch;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path workdir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gch_test_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

CommandOptions with_config(const fs::path& dir, json doc) {
  doc["output"]["directory"] = (dir / "out").string();
  const fs::path path = dir / "config.json";
  std::ofstream(path) << doc.dump(2);
  CommandOptions o;
  o.config = path;
  o.quiet = true;
  return o;
}

std::string field_of(const json& doc) {
  try {
    parse_config(doc).validate();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig def = parse_config(json::object());
  CHECK(def.a == 2.0);
  CHECK(def.b == 1.0);
  CHECK(def.operator_name == "identity");
  CHECK(def.n == 128);

  CHECK(field_of({{"params", {{"a", -1.0}}}}) == "params.a");
  CHECK(field_of({{"params", {{"b", 0.0}}}}) == "params.b");
  CHECK(field_of({{"grid", {{"n", 127}}}}) == "grid.n");
  CHECK(field_of({{"grid", {{"n", 128}, {"colour", 1}}}}) == "grid.colour");
  CHECK(field_of({{"bogus", 1}}) == "bogus");
  CHECK(field_of({{"time", {{"dt", "fast"}}}}) == "time.dt");
  CHECK(field_of({{"time", {{"method", "euler"}}}}) == "time.method");
  CHECK(field_of({{"operator", "nope"}}) == "operator");
  CHECK(field_of({{"initial", {{"kind", "square"}}}}) == "initial.kind");
  CHECK(field_of({{"operator", "helmholtz"}, {"time", {{"form", "m-form"}}}}) == "");

  const RunConfig modes = parse_config(
      {{"initial", {{"kind", "fourier-modes"}, {"modes", {{{"k", 2}, {"cos", 0.5}}}}}}});
  const FieldState u = modes.initial.build(modes.grid());
  CHECK(u.u[0] == doctest::Approx(0.5));
}

TEST_CASE("run smoke") {
  const fs::path dir = workdir("run");
  CommandOptions o = with_config(dir, {{"grid", {{"n", 64}}}, {"time", {{"dt", 0.01}, {"t_end", 0.2}}},
                                       {"output", {{"stride", 5}}}});
  std::ostringstream out, err;
  CHECK(cmd_run(o, out, err) == exit_code::kOk);
  CHECK(fs::exists(dir / "out" / "timeseries.csv"));
  CHECK(fs::exists(dir / "out" / "final.csv"));
  CHECK(fs::exists(dir / "out" / "snapshot_000005.csv"));

  CommandOptions bad = with_config(dir, {{"params", {{"a", -1.0}}}});
  std::ostringstream e2;
  CHECK(cmd_run(bad, out, e2) == exit_code::kError);
  CHECK(e2.str().find("params.a") != std::string::npos);

  CommandOptions br = with_config(dir, {{"grid", {{"n", 64}}}, {"monitor", {{"slope_threshold", 0.5}}}});
  CHECK(cmd_run(br, out, err) == exit_code::kWaveBreaking);

  CommandOptions missing;
  missing.config = dir / "absent.json";
  CHECK(cmd_run(missing, out, err) == exit_code::kError);
}

TEST_CASE("converge") {
  const fs::path dir = workdir("converge");
  std::ostringstream out, err;
  CommandOptions o = with_config(dir, {{"time", {{"t_end", 0.5}}}});
  CHECK(cmd_converge(o, out, err) == exit_code::kOk);
  CHECK(slurp(dir / "out" / "convergence.csv").rfind("dt,error\n", 0) == 0);

  CommandOptions zero = with_config(dir, {{"manufactured", {{"amplitude", 0.0}}}, {"time", {{"t_end", 0.1}}}});
  CHECK(cmd_converge(zero, out, err) == exit_code::kOk);

  CommandOptions single = with_config(dir, {{"manufactured", {{"dt_sweep", {1e-3}}}}});
  std::ostringstream e2;
  CHECK(cmd_converge(single, out, e2) == exit_code::kError);

  const Grid g = Grid::make(16);
  ManufacturedSpec aliased;
  aliased.wavenumber = 4;
  CHECK_THROWS_AS(manufactured_convergence(g, ModelParams{}, aliased, 0.1), ConfigError);
}

TEST_CASE("verify") {
  const fs::path dir = workdir("verify");
  std::ostringstream out, err;
  CommandOptions o = with_config(dir, {{"samples", {{"count", 10}, {"band", 8}}}, {"grid", {{"n", 64}}}});
  CHECK(cmd_verify("isometry", o, {}, out, err) == exit_code::kOk);
  CHECK(fs::exists(dir / "out" / "isometry.json"));

  VerifyOverrides bad;
  bad.comm_s = 0.0;
  std::ostringstream e2;
  CHECK(cmd_verify("commutator", o, bad, out, e2) == exit_code::kError);
  CHECK(e2.str().find("3/2 < s+n <= sigma") != std::string::npos);

  CHECK(cmd_verify("nonsense", o, {}, out, err) == exit_code::kError);

  CHECK(cmd_verify("all", o, {}, out, err) == exit_code::kOk);
  int reports = 0;
  for (const auto& e : fs::directory_iterator(dir / "out")) reports += e.path().extension() == ".json";
  CHECK(reports == 8);
}

TEST_CASE("compare forms") {
  const fs::path dir = workdir("compare");
  std::ostringstream out, err;
  CommandOptions o = with_config(dir, {{"compare", {{"samples", 3}}}, {"grid", {{"n", 64}}}});
  CHECK(cmd_compare_forms(o, out, err) == exit_code::kOk);
  const json rep = json::parse(slurp(dir / "out" / "compare_forms.json"));
  REQUIRE(rep["presets"].size() == 4);
  const json& id = rep["presets"][0];
  CHECK(id["operator"] == "identity");
  CHECK(id["reference"]["constant"].get<double>() <= 1e-13);
  CHECK(id["reference"]["cosine"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(id["samples"].size() == 3);

  CommandOptions none = with_config(dir, {{"compare", {{"samples", 0}}}});
  CHECK(cmd_compare_forms(none, out, err) == exit_code::kOk);
  const json empty = json::parse(slurp(dir / "out" / "compare_forms.json"));
  CHECK(empty["presets"][0]["samples"].empty());
}

TEST_CASE("outputs are deterministic") {
  std::ostringstream out, err;
  std::vector<std::string> runs;
  for (int i = 0; i < 2; ++i) {
    const fs::path dir = workdir("det" + std::to_string(i));
    CommandOptions o = with_config(dir, {{"grid", {{"n", 64}}}, {"time", {{"dt", 0.01}, {"t_end", 0.1}}},
                                         {"samples", {{"count", 5}, {"band", 8}}}, {"seed", 7}});
    REQUIRE(cmd_run(o, out, err) == exit_code::kOk);
    REQUIRE(cmd_verify("bbound", o, {}, out, err) == exit_code::kOk);
    runs.push_back(slurp(dir / "out" / "timeseries.csv") + slurp(dir / "out" / "final.csv") +
                   slurp(dir / "out" / "bbound.json"));
  }
  CHECK(runs[0] == runs[1]);
}

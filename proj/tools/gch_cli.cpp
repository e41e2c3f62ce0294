// Command-line driver: run, converge, verify, compare-forms, presets.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "gch/commands.hpp"

namespace {

void add_common(CLI::App* cmd, gch::CommandOptions& opts, std::string& config, std::string& out,
                std::uint64_t& seed) {
  cmd->add_option("--config", config, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", seed, "Random seed for sampled fields");
  cmd->add_option("--out", out, "Output directory");
  cmd->add_flag("--quiet", opts.quiet, "Suppress the summary on stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral solver and well-posedness checks for the dispersion-generalized "
               "Camassa-Holm equation"};
  app.require_subcommand(1);

  gch::CommandOptions opts;
  std::string config;
  std::string out;
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "Integrate a configured scenario");
  auto* converge = app.add_subcommand("converge", "Temporal order study with a manufactured solution");
  auto* verify = app.add_subcommand("verify", "Run sampled inequality suites");
  auto* compare = app.add_subcommand("compare-forms", "Residual of the quasi-linear form per preset");
  app.add_subcommand("presets", "List operator presets");

  for (auto* cmd : {run, converge, verify, compare}) add_common(cmd, opts, config, out, seed);

  std::string suite;
  gch::VerifyOverrides overrides;
  verify->add_option("suite", suite, "commutator | accretivity | lipschitz | bbound | frozen-growth | "
                                     "continuous-dependence | isometry | zero-source | all")
      ->required();
  verify->add_option("--samples", overrides.samples, "Number of sampled fields");
  verify->add_option("--band", overrides.band, "Highest excited mode");
  verify->add_option("--decay", overrides.decay, "Spectral decay exponent (>= 2)");
  verify->add_option("--n", overrides.n, "Base resolution (also run at 2n)");
  verify->add_option("--s", overrides.s, "Regularity index (default 4 + p)");
  verify->add_option("--comm-n", overrides.comm_n, "Commutator order n");
  verify->add_option("--comm-s", overrides.comm_s, "Commutator regularity s");
  verify->add_option("--sigma", overrides.comm_sigma, "Commutator regularity sigma");

  CLI11_PARSE(app, argc, argv);

  auto* sub = app.get_subcommands().front();
  for (auto* cmd : {run, converge, verify, compare}) {
    if (sub != cmd) continue;
    if (!config.empty()) opts.config = config;
    if (!out.empty()) opts.out = out;
    if (cmd->count("--seed") > 0) opts.seed = seed;
  }

  const std::string name = sub->get_name();
  if (name == "run") return gch::cmd_run(opts, std::cout, std::cerr);
  if (name == "converge") return gch::cmd_converge(opts, std::cout, std::cerr);
  if (name == "verify") return gch::cmd_verify(suite, opts, overrides, std::cout, std::cerr);
  if (name == "compare-forms") return gch::cmd_compare_forms(opts, std::cout, std::cerr);
  return gch::cmd_presets(std::cout);
}

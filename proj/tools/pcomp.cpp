#include <iostream>

#include <CLI11.hpp>

#include "pcomp/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Simulate planar point processes, decompose them into single lines, evaluate *-compensators and "
               "run Monte Carlo checks."};
  app.require_subcommand(1);

  pcomp::CliOptions opt;
  std::string config, pattern, out;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "Experiment configuration (JSON)");
    sub->add_option("--out", out, "Output directory (overrides output_dir)");
    sub->add_option("--seed", opt.seed, "Master seed (overrides seed)");
    sub->add_option("--jobs", opt.jobs, "Worker threads for replicates (0: all cores)");
  };

  auto* simulate = app.add_subcommand("simulate", "Write seeded pattern realizations");
  common(simulate);
  simulate->add_option("--count", opt.count, "Number of patterns (overrides simulate.count)");

  auto* decompose = app.add_subcommand("decompose", "Single-line decomposition of a pattern file");
  common(decompose);
  decompose->add_option("--pattern", pattern, "Pattern CSV")->required();
  decompose->add_flag("--svg", opt.svg, "Also draw decomposition.svg");

  auto* compensate = app.add_subcommand("compensate", "*-compensator path of a pattern file on the configured grid");
  common(compensate);
  compensate->add_option("--pattern", pattern, "Pattern CSV")->required();

  auto* verify = app.add_subcommand("verify", "Run the configured test battery");
  common(verify);
  verify->add_flag("--allow-inconclusive", opt.allow_inconclusive, "Do not fail on inconclusive tests");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pcomp::kExitConfig;
  }
  if (!config.empty()) opt.config = config;
  if (!pattern.empty()) opt.pattern = pattern;
  if (!out.empty()) opt.out = out;

  if (simulate->parsed()) return pcomp::cmd_simulate(opt, std::cout, std::cerr);
  if (decompose->parsed()) return pcomp::cmd_decompose(opt, std::cout, std::cerr);
  if (compensate->parsed()) return pcomp::cmd_compensate(opt, std::cout, std::cerr);
  return pcomp::cmd_verify(opt, std::cout, std::cerr);
}

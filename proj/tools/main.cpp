#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bhs/commands.hpp"
#include "bhs/config.hpp"

namespace {

struct SubArgs {
  std::string config_path;
  int jobs = 1;
  std::uint64_t seed_override = 0;
  std::string out_dir;
  CLI::Option* seed_opt = nullptr;
};

SubArgs* add_common(CLI::App* sub) {
  auto* args = new SubArgs();  // lives as long as the app; freed on exit
  sub->add_option("--config", args->config_path, "experiment config file")
      ->required();
  sub->add_option("--jobs", args->jobs, "worker threads for replications")
      ->check(CLI::PositiveNumber);
  args->seed_opt = sub->add_option("--seed-override", args->seed_override,
                                   "replace the config seed");
  sub->add_option("--out-dir", args->out_dir,
                  "output directory (defaults to the config's output_dir)");
  return args;
}

bhs::CliOptions to_options(const SubArgs& args) {
  bhs::CliOptions opts;
  opts.jobs = args.jobs;
  if (args.seed_opt->count() > 0) opts.seed_override = args.seed_override;
  opts.out_dir = args.out_dir;
  return opts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piecewise deterministic MCMC sampler toolkit"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run one sampler and write its output files");
  CLI::App* benchmark = app.add_subcommand(
      "benchmark", "replicated QBHS vs Gibbs comparison against quadrature truth");
  CLI::App* gentest = app.add_subcommand(
      "gentest", "generator invariance diagnostic (exit 2 when a z-score breaches the threshold)");
  CLI::App* truth = app.add_subcommand(
      "truth", "quadrature moments of a constrained bivariate Gaussian");

  SubArgs* run_args = add_common(run);
  SubArgs* benchmark_args = add_common(benchmark);
  SubArgs* gentest_args = add_common(gentest);
  SubArgs* truth_args = add_common(truth);

  CLI11_PARSE(app, argc, argv);

  try {
    const SubArgs* args = run->parsed()         ? run_args
                          : benchmark->parsed() ? benchmark_args
                          : gentest->parsed()   ? gentest_args
                                                : truth_args;
    const bhs::ExperimentConfig cfg = bhs::load_config_file(args->config_path);
    const bhs::CliOptions opts = to_options(*args);
    if (run->parsed()) return bhs::cmd_run(cfg, opts);
    if (benchmark->parsed()) return bhs::cmd_benchmark(cfg, opts);
    if (gentest->parsed()) return bhs::cmd_gentest(cfg, opts);
    return bhs::cmd_truth(cfg, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

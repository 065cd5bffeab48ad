#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bhs/config.hpp"

namespace bhs {

//! Command-line modifiers shared by all subcommands.
struct CliOptions {
  int jobs = 1;
  std::optional<std::uint64_t> seed_override;
  std::string out_dir;  // empty -> config's output dir
};

//! Run one configured chain; writes skeleton.csv (except gibbs), samples.csv,
//! histogram.json, summary.json. Returns a process exit code.
int cmd_run(const ExperimentConfig& config, const CliOptions& options);

//! Replicated QBHS-vs-Gibbs comparison against the quadrature truth; writes
//! mse_table.csv and benchmark_summary.json.
int cmd_benchmark(const ExperimentConfig& config, const CliOptions& options);

//! Generator invariance diagnostic; writes gentest.json. Exit code 2 when
//! any |z| exceeds the configured threshold.
int cmd_gentest(const ExperimentConfig& config, const CliOptions& options);

//! Standalone quadrature oracle; writes truth.json.
int cmd_truth(const ExperimentConfig& config, const CliOptions& options);

}  // namespace bhs

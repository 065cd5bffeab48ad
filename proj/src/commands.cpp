#include "bhs/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include <json.hpp>

#include "bhs/analysis.hpp"
#include "bhs/samplers.hpp"

namespace bhs {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

//! All output goes through a temp file + rename so failures never leave a
//! partially written artifact behind.
void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
  std::cout << "wrote " << path.string() << "\n";
}

fs::path resolve_out_dir(const ExperimentConfig& cfg,
                         const CliOptions& options) {
  const fs::path dir =
      options.out_dir.empty() ? fs::path(cfg.output_dir) : fs::path(options.out_dir);
  fs::create_directories(dir);
  return dir;
}

ExperimentConfig effective_config(const ExperimentConfig& config,
                                  const CliOptions& options) {
  ExperimentConfig cfg = config;
  if (options.seed_override) cfg.seed = *options.seed_override;
  return cfg;
}

Skeleton run_configured_skeleton(const ExperimentConfig& cfg) {
  const TargetModel target = cfg.build_target();
  const ConstraintSet constraints = cfg.build_constraints();
  const SamplerConfig scfg = cfg.build_sampler_config();
  const State init = cfg.build_initial_state();

  if (cfg.sampler == "bhs") {
    if (constraints.count() > 0)
      throw std::invalid_argument(
          "config: sampler bhs ignores constraints; use qbhs for walls");
    return run_bhs(target, scfg, init);
  }
  if (cfg.sampler == "cbhs") {
    if (constraints.count() > 0)
      throw std::invalid_argument("config: sampler cbhs does not support walls");
    return run_cbhs(target, scfg, init);
  }
  if (cfg.sampler == "qbhs") {
    Eigen::MatrixXd P = cfg.qbhs_P;
    if (P.size() == 0) P = Eigen::MatrixXd::Identity(cfg.dim, cfg.dim);
    return run_qbhs(target.gaussian_target(), constraints, P, cfg.qbhs_a, scfg,
                    init);
  }
  throw std::invalid_argument("config: sampler '" + cfg.sampler +
                              "' does not produce a skeleton");
}

std::string skeleton_csv(const Skeleton& skel) {
  const int d = skel.dim();
  std::string out = "# schema: bhs.skeleton.v1\n";
  out += "t";
  for (int i = 1; i <= d; ++i) out += ",x_" + std::to_string(i);
  for (int i = 1; i <= d; ++i) out += ",v_" + std::to_string(i);
  out += ",event_kind\n";
  for (const EventRecord& ev : skel.events()) {
    out += format_double(ev.time);
    for (int i = 0; i < d; ++i) out += "," + format_double(ev.position[i]);
    for (int i = 0; i < d; ++i)
      out += "," + format_double(ev.velocity_after[i]);
    out += ",";
    out += event_kind_name(ev.kind);
    out += "\n";
  }
  return out;
}

std::string samples_csv(const DiscretizedChain& chain) {
  const int d = chain.dim();
  std::string out = "# schema: bhs.samples.v1\n";
  out += "t";
  for (int i = 1; i <= d; ++i) out += ",x_" + std::to_string(i);
  for (int i = 1; i <= d; ++i) out += ",v_" + std::to_string(i);
  out += "\n";
  for (int r = 0; r < chain.size(); ++r) {
    out += format_double(chain.times[r]);
    for (int i = 0; i < d; ++i)
      out += "," + format_double(chain.positions(r, i));
    for (int i = 0; i < d; ++i)
      out += "," + format_double(chain.velocities(r, i));
    out += "\n";
  }
  return out;
}

std::string gibbs_samples_csv(const std::vector<Eigen::VectorXd>& samples) {
  const int d = samples.empty() ? 0 : static_cast<int>(samples.front().size());
  std::string out = "# schema: bhs.samples.v1\n";
  out += "t";
  for (int i = 1; i <= d; ++i) out += ",x_" + std::to_string(i);
  out += "\n";
  for (std::size_t r = 0; r < samples.size(); ++r) {
    out += format_double(double(r + 1));
    for (int i = 0; i < d; ++i) out += "," + format_double(samples[r][i]);
    out += "\n";
  }
  return out;
}

ordered_json histogram_json(const Eigen::MatrixXd& positions, int first_row,
                            const std::vector<double>& config_edges) {
  ordered_json coords = ordered_json::array();
  const int d = static_cast<int>(positions.cols());
  const int n = static_cast<int>(positions.rows());
  for (int c = 0; c < d; ++c) {
    std::vector<double> edges = config_edges;
    if (edges.empty()) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (int r = first_row; r < n; ++r) {
        lo = std::min(lo, positions(r, c));
        hi = std::max(hi, positions(r, c));
      }
      if (!(lo < hi)) {
        lo -= 0.5;
        hi += 0.5;
      }
      const int bins = 50;
      edges.resize(bins + 1);
      for (int k = 0; k <= bins; ++k)
        edges[k] = lo + (hi - lo) * double(k) / bins;
    } else {
      for (std::size_t k = 1; k < edges.size(); ++k)
        if (!(edges[k - 1] < edges[k]))
          throw std::invalid_argument(
              "config: histogram_edges must strictly increase");
      if (edges.size() < 2)
        throw std::invalid_argument("config: histogram_edges needs >= 2 edges");
    }
    std::vector<long long> counts(edges.size() - 1, 0);
    long long dropped = 0;
    for (int r = first_row; r < n; ++r) {
      const double x = positions(r, c);
      const auto it = std::upper_bound(edges.begin(), edges.end(), x);
      if (it == edges.begin() || it == edges.end()) {
        // A value equal to the last edge belongs to the final bin.
        if (it == edges.end() && x == edges.back())
          ++counts.back();
        else
          ++dropped;
        continue;
      }
      ++counts[std::distance(edges.begin(), it) - 1];
    }
    ordered_json entry;
    entry["name"] = "x" + std::to_string(c + 1);
    entry["edges"] = edges;
    entry["counts"] = counts;
    entry["dropped"] = dropped;
    coords.push_back(entry);
  }
  ordered_json out;
  out["schema"] = "bhs.histogram.v1";
  out["coordinates"] = coords;
  return out;
}

ordered_json moments_json(const MomentReport& report) {
  ordered_json out;
  out["mean"] = std::vector<double>(report.mean.begin(), report.mean.end());
  out["variance"] =
      std::vector<double>(report.variance.begin(), report.variance.end());
  return out;
}

int burn_in_rows(const Eigen::VectorXd& times, double T_total) {
  const double burn = 0.1 * T_total;
  int first = 0;
  while (first < times.size() && times[first] <= burn) ++first;
  return first;
}

}  // namespace

int cmd_run(const ExperimentConfig& config, const CliOptions& options) {
  const auto t_start = std::chrono::steady_clock::now();
  const ExperimentConfig cfg = effective_config(config, options);
  const fs::path dir = resolve_out_dir(cfg, options);
  const ConstraintSet constraints = cfg.build_constraints();

  ordered_json summary;
  summary["schema"] = "bhs.summary.v1";
  summary["sampler"] = cfg.sampler;
  summary["seed"] = cfg.seed;
  summary["dim"] = cfg.dim;

  if (cfg.sampler == "gibbs") {
    const TargetModel target = cfg.build_target();
    const State init = cfg.build_initial_state();
    const std::vector<Eigen::VectorXd> samples = run_gibbs_truncated_mvn(
        target.gaussian_target(), constraints, cfg.gibbs_samples, cfg.seed,
        init.position);
    write_file_atomic(dir / "samples.csv", gibbs_samples_csv(samples));

    Eigen::MatrixXd rows(samples.size(), cfg.dim);
    for (std::size_t r = 0; r < samples.size(); ++r)
      rows.row(r) = samples[r].transpose();
    const int first = static_cast<int>(samples.size() / 10);
    write_file_atomic(
        dir / "histogram.json",
        histogram_json(rows, first, cfg.histogram_edges).dump(2) + "\n");

    summary["T_total"] = nullptr;
    summary["delta"] = nullptr;
    summary["n_samples"] = samples.size();
    summary["event_counts"] = ordered_json::object();
    if (static_cast<int>(samples.size()) - first >= 2) {
      std::vector<Eigen::VectorXd> kept(samples.begin() + first,
                                        samples.end());
      summary["moments"] = moments_json(chain_moments(kept));
    } else {
      summary["moments"] = nullptr;
    }
    bool feasible = true;
    for (const Eigen::VectorXd& x : samples)
      feasible = feasible && constraints_satisfied(constraints, x);
    summary["feasible"] = feasible;
  } else {
    const Skeleton skel = run_configured_skeleton(cfg);
    write_file_atomic(dir / "skeleton.csv", skeleton_csv(skel));
    const DiscretizedChain chain = discretize(skel, cfg.delta);
    write_file_atomic(dir / "samples.csv", samples_csv(chain));

    const int first = burn_in_rows(chain.times, skel.total_time());
    write_file_atomic(
        dir / "histogram.json",
        histogram_json(chain.positions, first, cfg.histogram_edges).dump(2) +
            "\n");

    summary["T_total"] = skel.total_time();
    summary["delta"] = cfg.delta;
    summary["n_samples"] = chain.size();
    std::map<std::string, long long> counts;
    for (const EventRecord& ev : skel.events()) ++counts[event_kind_name(ev.kind)];
    summary["event_counts"] = counts;
    if (chain.size() - first >= 2) {
      DiscretizedChain kept;
      kept.delta = chain.delta;
      kept.times = chain.times.tail(chain.size() - first);
      kept.positions = chain.positions.bottomRows(chain.size() - first);
      kept.velocities = chain.velocities.bottomRows(chain.size() - first);
      summary["moments"] = moments_json(chain_moments(kept));
    } else {
      summary["moments"] = nullptr;
    }
    bool feasible = true;
    for (int r = 0; r < chain.size(); ++r)
      feasible = feasible && constraints_satisfied(
                                 constraints, chain.positions.row(r).transpose());
    summary["feasible"] = feasible;
  }

  const auto t_end = std::chrono::steady_clock::now();
  summary["runtime_seconds"] =
      std::chrono::duration<double>(t_end - t_start).count();
  write_file_atomic(dir / "summary.json", summary.dump(2) + "\n");
  return 0;
}

int cmd_benchmark(const ExperimentConfig& config, const CliOptions& options) {
  const auto t_start = std::chrono::steady_clock::now();
  const ExperimentConfig cfg = effective_config(config, options);
  const fs::path dir = resolve_out_dir(cfg, options);

  const TargetModel target = cfg.build_target();
  const ConstraintSet constraints = cfg.build_constraints();
  const State init = cfg.build_initial_state();
  const int R = cfg.replications;

  std::cout << "computing quadrature truth...\n";
  const MomentReport truth =
      quadrature_truth_truncated_mvn(target.gaussian_target(), constraints);

  Eigen::MatrixXd P = cfg.qbhs_P;
  if (P.size() == 0) P = Eigen::MatrixXd::Identity(cfg.dim, cfg.dim);

  std::vector<MomentReport> qbhs_reps(R), gibbs_reps(R);
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  const auto worker = [&]() {
    while (true) {
      const int r = next.fetch_add(1);
      if (r >= R) return;
      try {
        // Protocol: both samplers spend their full budget from the shared
        // initial point; estimates use every sample (no burn-in discard).
        SamplerConfig scfg = cfg.build_sampler_config();
        scfg.seed = cfg.seed + static_cast<std::uint64_t>(r);
        const Skeleton skel = run_qbhs(target.gaussian_target(), constraints,
                                       P, cfg.qbhs_a, scfg, init);
        qbhs_reps[r] = chain_moments(discretize(skel, cfg.delta));

        const std::vector<Eigen::VectorXd> draws = run_gibbs_truncated_mvn(
            target.gaussian_target(), constraints, cfg.gibbs_samples,
            (cfg.seed + static_cast<std::uint64_t>(r)) ^ 0x9e3779b97f4a7c15ull,
            init.position);
        gibbs_reps[r] = chain_moments(draws);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  const int jobs = std::max(1, std::min(options.jobs, R));
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  const MseTable mse_qbhs = mse_report(qbhs_reps, truth);
  const MseTable mse_gibbs = mse_report(gibbs_reps, truth);

  std::string csv = "# schema: bhs.mse_table.v1\n";
  csv += "quantity,gibbs,qbhs\n";
  const auto row = [&csv](const std::string& name, double g, double q) {
    csv += name + "," + format_double(g) + "," + format_double(q) + "\n";
  };
  for (int i = 0; i < cfg.dim; ++i)
    row("MSE(mean_" + std::to_string(i + 1) + ")", mse_gibbs.mean_mse[i],
        mse_qbhs.mean_mse[i]);
  for (int i = 0; i < cfg.dim; ++i)
    row("MSE(var_" + std::to_string(i + 1) + ")", mse_gibbs.variance_mse[i],
        mse_qbhs.variance_mse[i]);
  write_file_atomic(dir / "mse_table.csv", csv);

  const auto t_end = std::chrono::steady_clock::now();
  ordered_json summary;
  summary["schema"] = "bhs.benchmark.v1";
  summary["replications"] = R;
  summary["gibbs_samples"] = cfg.gibbs_samples;
  summary["qbhs_T_total"] = cfg.T_total;
  summary["qbhs_delta"] = cfg.delta;
  summary["truth"] = moments_json(truth);
  summary["gibbs"] = {
      {"mean_mse",
       std::vector<double>(mse_gibbs.mean_mse.begin(), mse_gibbs.mean_mse.end())},
      {"variance_mse", std::vector<double>(mse_gibbs.variance_mse.begin(),
                                           mse_gibbs.variance_mse.end())}};
  summary["qbhs"] = {
      {"mean_mse",
       std::vector<double>(mse_qbhs.mean_mse.begin(), mse_qbhs.mean_mse.end())},
      {"variance_mse", std::vector<double>(mse_qbhs.variance_mse.begin(),
                                           mse_qbhs.variance_mse.end())}};
  summary["runtime_seconds"] =
      std::chrono::duration<double>(t_end - t_start).count();
  write_file_atomic(dir / "benchmark_summary.json", summary.dump(2) + "\n");

  std::cout << csv;
  return 0;
}

int cmd_gentest(const ExperimentConfig& config, const CliOptions& options) {
  const ExperimentConfig cfg = effective_config(config, options);
  const fs::path dir = resolve_out_dir(cfg, options);
  if (cfg.sampler == "gibbs")
    throw std::invalid_argument(
        "gentest needs a continuous-time sampler (bhs, qbhs, or cbhs)");

  const Skeleton skel = run_configured_skeleton(cfg);
  const std::vector<TestFunction> suite = default_test_suite(cfg.dim);
  const GeneratorTestResult result = generator_invariance_test(skel, suite);

  ordered_json out;
  out["schema"] = "bhs.gentest.v1";
  out["sampler"] = cfg.sampler;
  out["threshold"] = cfg.gentest_threshold;
  ordered_json fns = ordered_json::array();
  for (std::size_t i = 0; i < result.names.size(); ++i) {
    ordered_json f;
    f["name"] = result.names[i];
    f["mean"] = result.means[i];
    f["std_error"] = result.std_errors[i];
    f["z"] = result.z_scores[i];
    fns.push_back(f);
  }
  out["functions"] = fns;
  out["max_abs_z"] = result.max_abs_z();
  const bool pass = result.max_abs_z() <= cfg.gentest_threshold;
  out["pass"] = pass;
  write_file_atomic(dir / "gentest.json", out.dump(2) + "\n");

  std::cout << "max |z| = " << result.max_abs_z() << " (threshold "
            << cfg.gentest_threshold << ")\n";
  return pass ? 0 : 2;
}

int cmd_truth(const ExperimentConfig& config, const CliOptions& options) {
  const ExperimentConfig cfg = effective_config(config, options);
  const fs::path dir = resolve_out_dir(cfg, options);
  const TargetModel target = cfg.build_target();
  const MomentReport truth = quadrature_truth_truncated_mvn(
      target.gaussian_target(), cfg.build_constraints());

  ordered_json out;
  out["schema"] = "bhs.truth.v1";
  out["moments"] = moments_json(truth);
  write_file_atomic(dir / "truth.json", out.dump(2) + "\n");
  return 0;
}

}  // namespace bhs

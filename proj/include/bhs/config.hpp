#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bhs/model.hpp"
#include "bhs/samplers.hpp"

namespace bhs {

//! Experiment description parsed from the INI-style config format
//! (sections of `key = value` lines; vectors space-separated, matrix rows
//! joined by ';'). serialize_config(parse_config(s)) reproduces any
//! serialize_config output byte for byte.
struct ExperimentConfig {
  // [run]
  std::string sampler = "bhs";  // bhs | qbhs | cbhs | gibbs

  // [target]
  int dim = 1;
  Eigen::VectorXd mean;        // empty -> zeros(dim)
  Eigen::MatrixXd covariance;  // empty -> identity(dim)

  // [guide]
  std::string guide_kind = "zero";  // zero | grad_potential | linear
  Eigen::MatrixXd guide_matrix;     // required for kind = linear

  // [constraints]  (columns of F are individual constraints; empty = none)
  Eigen::MatrixXd F;
  Eigen::VectorXd h;

  // [sampler]
  double lambda0 = 1.0;
  double T_total = 100.0;
  double delta = 0.1;
  std::uint64_t seed = 1;
  double refresh_angle = std::numbers::pi / 2.0;
  std::string bounce_kernel = "deterministic";  // deterministic | stochastic
  std::vector<double> gamma;                    // cbhs extra flip rates
  bool corrupt_kernel = false;                  // diagnostic hook
  Eigen::VectorXd initial_position;  // empty -> target mean (unconstrained)
  Eigen::VectorXd initial_velocity;  // empty -> N(0, I) draw from the seed

  // [qbhs]
  double qbhs_a = -1.0;
  Eigen::MatrixXd qbhs_P;  // empty -> identity

  // [gibbs]
  int gibbs_samples = 12000;

  // [benchmark]
  int replications = 100;

  // [gentest]
  double gentest_threshold = 5.0;

  // [output]
  std::string output_dir = ".";
  std::vector<double> histogram_edges;  // empty -> 50 auto bins

  TargetModel build_target() const;
  ConstraintSet build_constraints() const;
  SamplerConfig build_sampler_config() const;
  State build_initial_state() const;
};

//! Parse config text; malformed input throws with line and field context.
ExperimentConfig parse_config(const std::string& text);

//! Parse a config file; errors mention the path.
ExperimentConfig load_config_file(const std::string& path);

//! Canonical text form: fixed section and key order, 17-significant-digit
//! floats. A fixed point of parse -> serialize.
std::string serialize_config(const ExperimentConfig& config);

//! %.17g rendering used across all text output.
std::string format_double(double value);

}  // namespace bhs

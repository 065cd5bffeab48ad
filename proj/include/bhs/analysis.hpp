#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bhs/model.hpp"
#include "bhs/samplers.hpp"

namespace bhs {

//! Chain states on the regular grid t = i*delta, i = 1..N, N = floor(T/delta).
//! Rows index samples; every row lies exactly on the reconstructed trajectory.
struct DiscretizedChain {
  double delta = 0.0;
  Eigen::VectorXd times;       // N
  Eigen::MatrixXd positions;   // N x d
  Eigen::MatrixXd velocities;  // N x d

  int size() const { return static_cast<int>(times.size()); }
  int dim() const { return static_cast<int>(positions.cols()); }
};

//! Sample the skeleton's exact trajectory on the delta-grid.
//! delta > T_total (zero grid points) is an error.
DiscretizedChain discretize(const Skeleton& skeleton, double delta);

//! Arithmetic mean of f over the chain's positions.
double time_average(const DiscretizedChain& chain,
                    const std::function<double(const Eigen::VectorXd&)>& f);

//! Per-coordinate mean and variance estimates, optionally carrying reference
//! values and the squared error against them.
struct MomentReport {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;

  bool has_reference = false;
  Eigen::VectorXd ref_mean, ref_variance;
  Eigen::VectorXd mean_sq_error, variance_sq_error;

  int dim() const { return static_cast<int>(mean.size()); }
  void set_reference(const MomentReport& truth);
};

//! Sample moments of the chain positions (variance normalized by N-1).
MomentReport chain_moments(const DiscretizedChain& chain);
MomentReport chain_moments(const std::vector<Eigen::VectorXd>& samples);

//! Moments of a bivariate Gaussian restricted to {F^T x + h >= 0}, by exact
//! conditional slices in x2 and composite Gauss-Legendre panels in x1 over
//! the mean +- 8 sigma box. Panel subdivisions double until every moment
//! moves by less than 1e-6; failure to stabilize throws.
MomentReport quadrature_truth_truncated_mvn(const GaussianTarget& target,
                                            const ConstraintSet& constraints,
                                            int initial_subdivisions = 8);

//! Mean squared error of replicated moment estimates against a fixed truth.
struct MseTable {
  Eigen::VectorXd mean_mse;
  Eigen::VectorXd variance_mse;
};
MseTable mse_report(const std::vector<MomentReport>& replications,
                    const MomentReport& truth);

//! One term coef * prod_i x_i^{x_exp[i]} * prod_i v_i^{v_exp[i]}.
struct MonomialTerm {
  double coef = 0.0;
  Eigen::VectorXi x_exp;
  Eigen::VectorXi v_exp;
};

//! Polynomial in (x, v) of total degree <= 4. The degree cap keeps every
//! Gaussian velocity average available in closed form (odd moments vanish,
//! E[v^2] = 1, E[v^4] = 3).
class TestFunction {
 public:
  TestFunction(int dim, std::vector<MonomialTerm> terms, std::string name);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }

  double eval(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const;
  Eigen::VectorXd grad_x(const Eigen::VectorXd& x,
                         const Eigen::VectorXd& v) const;
  Eigen::VectorXd grad_v(const Eigen::VectorXd& x,
                         const Eigen::VectorXd& v) const;

  //! E f(x, v') over v' ~ N(0, I).
  double full_refresh_average(const Eigen::VectorXd& x) const;
  //! E f(x, cos(phi) v + sin(phi) xi) over xi ~ N(0, I).
  double partial_refresh_average(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& v, double phi) const;

 private:
  int dim_ = 0;
  std::vector<MonomialTerm> terms_;
  std::string name_;
};

//! Ten monomials of total degree <= 4 mixing position and velocity.
std::vector<TestFunction> default_test_suite(int dim);

struct BatchMeansResult {
  double mean = 0.0;
  double std_error = 0.0;
  double z = 0.0;
};

//! Mean, batch-means standard error, and z = mean/SE. An identically zero
//! sequence gives z = 0; nonzero mean with zero batch variance is an error.
BatchMeansResult batch_means_zscore(const std::vector<double>& values,
                                    int n_batches = 50);

struct GeneratorTestResult {
  std::vector<std::string> names;
  std::vector<double> means;
  std::vector<double> std_errors;
  std::vector<double> z_scores;

  double max_abs_z() const;
};

//! Empirical check that the stationary average of the generator vanishes:
//! evaluates A f over the discretized chain (10% burn-in dropped) and returns
//! batch-means z-scores per test function. Constrained skeletons are
//! rejected (wall reflections add boundary terms the formula omits).
GeneratorTestResult generator_invariance_test(
    const Skeleton& skeleton, const std::vector<TestFunction>& test_fns,
    int n_batches = 50);

//! One-sample Kolmogorov-Smirnov statistic against the standard normal CDF.
double ks_statistic_standard_normal(std::vector<double> values);

//! Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

//! Smallest lag k with |empirical autocorrelation at lag k| below threshold;
//! capped at n/2.
int autocorr_thinning_lag(const std::vector<double>& series,
                          double threshold = 0.1);

//! Every stride-th element, starting with the first.
std::vector<double> thin_series(const std::vector<double>& series, int stride);

}  // namespace bhs

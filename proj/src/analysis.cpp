#include "bhs/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bhs/kernels.hpp"
#include "bhs/normal.hpp"

namespace bhs {

namespace {

double int_pow(double base, int e) {
  double out = 1.0;
  for (int k = 0; k < e; ++k) out *= base;
  return out;
}

//! E[Z^k] for Z ~ N(0,1): 0 for odd k, (k-1)!! for even k.
double standard_normal_moment(int k) {
  if (k % 2 == 1) return 0.0;
  double out = 1.0;
  for (int j = k - 1; j > 1; j -= 2) out *= j;
  return out;
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out *= double(n - k + j) / double(j);
  return out;
}

//! Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
//! Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    nodes[i] = -z;
    nodes[n - 1 - i] = z;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

}  // namespace

DiscretizedChain discretize(const Skeleton& skeleton, double delta) {
  if (!(delta > 0.0))
    throw std::invalid_argument("discretize: delta must be > 0");
  const double T = skeleton.total_time();
  const int N = static_cast<int>(std::floor(T / delta + 1e-9));
  if (N < 1)
    throw std::invalid_argument("discretize: delta exceeds the chain length");
  const int d = skeleton.dim();

  DiscretizedChain out;
  out.delta = delta;
  out.times.resize(N);
  out.positions.resize(N, d);
  out.velocities.resize(N, d);
  SegmentCursor cursor(skeleton);
  for (int i = 1; i <= N; ++i) {
    const double t = std::min(i * delta, T);
    const State s = cursor.state_at(t);
    out.times[i - 1] = t;
    out.positions.row(i - 1) = s.position.transpose();
    out.velocities.row(i - 1) = s.velocity.transpose();
  }
  return out;
}

double time_average(const DiscretizedChain& chain,
                    const std::function<double(const Eigen::VectorXd&)>& f) {
  if (chain.size() == 0)
    throw std::invalid_argument("time_average: empty chain");
  double acc = 0.0;
  for (int i = 0; i < chain.size(); ++i)
    acc += f(chain.positions.row(i).transpose());
  return acc / chain.size();
}

void MomentReport::set_reference(const MomentReport& truth) {
  if (truth.dim() != dim())
    throw std::invalid_argument("MomentReport: reference dimension mismatch");
  ref_mean = truth.mean;
  ref_variance = truth.variance;
  mean_sq_error = (mean - ref_mean).array().square();
  variance_sq_error = (variance - ref_variance).array().square();
  has_reference = true;
}

namespace {

MomentReport moments_from_rows(const Eigen::MatrixXd& rows) {
  const int n = static_cast<int>(rows.rows());
  if (n < 2)
    throw std::invalid_argument("chain_moments: need at least two samples");
  MomentReport out;
  out.mean = rows.colwise().mean().transpose();
  const Eigen::MatrixXd centered = rows.rowwise() - out.mean.transpose();
  out.variance = centered.array().square().colwise().sum().transpose() /
                 double(n - 1);
  return out;
}

}  // namespace

MomentReport chain_moments(const DiscretizedChain& chain) {
  return moments_from_rows(chain.positions);
}

MomentReport chain_moments(const std::vector<Eigen::VectorXd>& samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("chain_moments: need at least two samples");
  const int d = static_cast<int>(samples.front().size());
  Eigen::MatrixXd rows(samples.size(), d);
  for (std::size_t i = 0; i < samples.size(); ++i)
    rows.row(i) = samples[i].transpose();
  return moments_from_rows(rows);
}

MomentReport quadrature_truth_truncated_mvn(const GaussianTarget& target,
                                            const ConstraintSet& constraints,
                                            int initial_subdivisions) {
  if (target.dim() != 2)
    throw std::invalid_argument("quadrature oracle is bivariate only");
  if (constraints.dim() != 2)
    throw std::invalid_argument("quadrature: constraint dimension mismatch");
  if (initial_subdivisions < 1)
    throw std::invalid_argument("quadrature: subdivisions must be >= 1");

  const double mu1 = target.mean[0], mu2 = target.mean[1];
  const double var1 = target.covariance(0, 0);
  const double sd1 = std::sqrt(var1);
  const double var2 = target.covariance(1, 1);
  const double cov12 = target.covariance(0, 1);
  const double slope = cov12 / var1;
  const double cond_sd = std::sqrt(var2 - cov12 * slope);

  double x1_lo = mu1 - 8.0 * sd1, x1_hi = mu1 + 8.0 * sd1;
  const double box2_lo = mu2 - 8.0 * std::sqrt(var2);
  const double box2_hi = mu2 + 8.0 * std::sqrt(var2);

  // Slice bounds as lines x2 = alpha + beta*x1; the box edges join the lists.
  std::vector<double> lo_a{box2_lo}, lo_b{0.0}, hi_a{box2_hi}, hi_b{0.0};
  for (int j = 0; j < constraints.count(); ++j) {
    const double f1 = constraints.F(0, j), f2 = constraints.F(1, j);
    const double h = constraints.h[j];
    if (f2 == 0.0) {
      if (f1 > 0.0)
        x1_lo = std::max(x1_lo, -h / f1);
      else if (f1 < 0.0)
        x1_hi = std::min(x1_hi, -h / f1);
      else if (h < 0.0)
        throw std::invalid_argument("quadrature: infeasible constant constraint");
    } else if (f2 > 0.0) {
      lo_a.push_back(-h / f2);
      lo_b.push_back(-f1 / f2);
    } else {
      hi_a.push_back(-h / f2);
      hi_b.push_back(-f1 / f2);
    }
  }
  if (!(x1_lo < x1_hi))
    throw std::runtime_error("quadrature: domain has no x1 extent");

  // Panel cuts where the slice envelopes can switch lines.
  std::vector<double> all_a = lo_a, all_b = lo_b;
  all_a.insert(all_a.end(), hi_a.begin(), hi_a.end());
  all_b.insert(all_b.end(), hi_b.begin(), hi_b.end());
  std::vector<double> cuts{x1_lo, x1_hi};
  for (std::size_t p = 0; p < all_a.size(); ++p)
    for (std::size_t q = p + 1; q < all_a.size(); ++q) {
      const double db = all_b[p] - all_b[q];
      if (std::abs(db) < 1e-14) continue;
      const double xc = (all_a[q] - all_a[p]) / db;
      if (xc > x1_lo && xc < x1_hi) cuts.push_back(xc);
    }
  std::sort(cuts.begin(), cuts.end());
  const double cut_tol = 1e-12 * (1.0 + std::abs(x1_lo) + std::abs(x1_hi));
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [&](double a, double b) { return b - a < cut_tol; }),
             cuts.end());

  std::vector<double> nodes, weights;
  gauss_legendre(20, nodes, weights);

  const auto integrate = [&](int subs) {
    std::array<double, 5> acc{0.0, 0.0, 0.0, 0.0, 0.0};
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double width = (cuts[c + 1] - cuts[c]) / subs;
      for (int s = 0; s < subs; ++s) {
        const double left = cuts[c] + s * width;
        const double mid = left + 0.5 * width, half = 0.5 * width;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
          const double x1 = mid + half * nodes[k];
          double lo = -std::numeric_limits<double>::infinity();
          double hi = std::numeric_limits<double>::infinity();
          for (std::size_t j = 0; j < lo_a.size(); ++j)
            lo = std::max(lo, lo_a[j] + lo_b[j] * x1);
          for (std::size_t j = 0; j < hi_a.size(); ++j)
            hi = std::min(hi, hi_a[j] + hi_b[j] * x1);
          if (!(lo < hi)) continue;
          const double wt =
              half * weights[k] * normal_pdf((x1 - mu1) / sd1) / sd1;
          const TruncatedMoments tm = truncated_normal_moments(
              mu2 + slope * (x1 - mu1), cond_sd, lo, hi);
          acc[0] += wt * tm.mass;
          acc[1] += wt * tm.mass * x1;
          acc[2] += wt * tm.mass * x1 * x1;
          acc[3] += wt * tm.m1;
          acc[4] += wt * tm.m2;
        }
      }
    }
    return acc;
  };

  const auto to_moments = [](const std::array<double, 5>& acc) {
    if (!(acc[0] > 0.0))
      throw std::runtime_error("quadrature: domain carries no mass");
    std::array<double, 4> m;
    m[0] = acc[1] / acc[0];
    m[1] = acc[2] / acc[0] - m[0] * m[0];
    m[2] = acc[3] / acc[0];
    m[3] = acc[4] / acc[0] - m[2] * m[2];
    return m;
  };

  int subs = initial_subdivisions;
  std::array<double, 4> prev = to_moments(integrate(subs));
  for (int level = 0; level < 12; ++level) {
    subs *= 2;
    const std::array<double, 4> cur = to_moments(integrate(subs));
    double dmax = 0.0;
    for (int i = 0; i < 4; ++i) dmax = std::max(dmax, std::abs(cur[i] - prev[i]));
    if (dmax < 1e-6) {
      MomentReport out;
      out.mean = Eigen::Vector2d(cur[0], cur[2]);
      out.variance = Eigen::Vector2d(cur[1], cur[3]);
      return out;
    }
    prev = cur;
  }
  throw std::runtime_error(
      "quadrature: moments did not stabilize to 1e-6 under subdivision "
      "doubling");
}

MseTable mse_report(const std::vector<MomentReport>& replications,
                    const MomentReport& truth) {
  if (replications.size() < 2)
    throw std::invalid_argument("mse_report: need at least two replications");
  const int d = truth.dim();
  MseTable out;
  out.mean_mse = Eigen::VectorXd::Zero(d);
  out.variance_mse = Eigen::VectorXd::Zero(d);
  for (const MomentReport& rep : replications) {
    if (rep.dim() != d)
      throw std::invalid_argument("mse_report: replication dimension mismatch");
    out.mean_mse += (rep.mean - truth.mean).array().square().matrix();
    out.variance_mse += (rep.variance - truth.variance).array().square().matrix();
  }
  out.mean_mse /= double(replications.size());
  out.variance_mse /= double(replications.size());
  return out;
}

TestFunction::TestFunction(int dim, std::vector<MonomialTerm> terms,
                           std::string name)
    : dim_(dim), terms_(std::move(terms)), name_(std::move(name)) {
  if (dim_ < 1) throw std::invalid_argument("TestFunction: dim must be >= 1");
  for (const MonomialTerm& t : terms_) {
    if (t.x_exp.size() != dim_ || t.v_exp.size() != dim_)
      throw std::invalid_argument("TestFunction: exponent dimension mismatch");
    if (!std::isfinite(t.coef))
      throw std::invalid_argument("TestFunction: non-finite coefficient");
    int degree = 0;
    for (int i = 0; i < dim_; ++i) {
      if (t.x_exp[i] < 0 || t.v_exp[i] < 0)
        throw std::invalid_argument("TestFunction: negative exponent");
      degree += t.x_exp[i] + t.v_exp[i];
    }
    if (degree > 4)
      throw std::invalid_argument(
          "TestFunction: total degree above 4 loses the closed-form "
          "velocity averages");
  }
}

double TestFunction::eval(const Eigen::VectorXd& x,
                          const Eigen::VectorXd& v) const {
  double acc = 0.0;
  for (const MonomialTerm& t : terms_) {
    double term = t.coef;
    for (int i = 0; i < dim_; ++i)
      term *= int_pow(x[i], t.x_exp[i]) * int_pow(v[i], t.v_exp[i]);
    acc += term;
  }
  return acc;
}

Eigen::VectorXd TestFunction::grad_x(const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  for (const MonomialTerm& t : terms_) {
    double base = t.coef;
    for (int i = 0; i < dim_; ++i) base *= int_pow(v[i], t.v_exp[i]);
    for (int j = 0; j < dim_; ++j) {
      if (t.x_exp[j] == 0) continue;
      double term = base * t.x_exp[j] * int_pow(x[j], t.x_exp[j] - 1);
      for (int i = 0; i < dim_; ++i)
        if (i != j) term *= int_pow(x[i], t.x_exp[i]);
      out[j] += term;
    }
  }
  return out;
}

Eigen::VectorXd TestFunction::grad_v(const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  for (const MonomialTerm& t : terms_) {
    double base = t.coef;
    for (int i = 0; i < dim_; ++i) base *= int_pow(x[i], t.x_exp[i]);
    for (int j = 0; j < dim_; ++j) {
      if (t.v_exp[j] == 0) continue;
      double term = base * t.v_exp[j] * int_pow(v[j], t.v_exp[j] - 1);
      for (int i = 0; i < dim_; ++i)
        if (i != j) term *= int_pow(v[i], t.v_exp[i]);
      out[j] += term;
    }
  }
  return out;
}

double TestFunction::full_refresh_average(const Eigen::VectorXd& x) const {
  double acc = 0.0;
  for (const MonomialTerm& t : terms_) {
    double term = t.coef;
    for (int i = 0; i < dim_; ++i) {
      term *= int_pow(x[i], t.x_exp[i]) * standard_normal_moment(t.v_exp[i]);
      if (term == 0.0) break;
    }
    acc += term;
  }
  return acc;
}

double TestFunction::partial_refresh_average(const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& v,
                                             double phi) const {
  const double c = std::cos(phi), s = std::sin(phi);
  double acc = 0.0;
  for (const MonomialTerm& t : terms_) {
    double term = t.coef;
    for (int i = 0; i < dim_ && term != 0.0; ++i) {
      term *= int_pow(x[i], t.x_exp[i]);
      const int deg = t.v_exp[i];
      if (deg == 0) continue;
      // E (c w + s xi)^deg over xi ~ N(0,1), expanded binomially.
      double factor = 0.0;
      for (int k = 0; k <= deg; k += 2)
        factor += binomial(deg, k) * int_pow(c * v[i], deg - k) *
                  int_pow(s, k) * standard_normal_moment(k);
      term *= factor;
    }
    acc += term;
  }
  return acc;
}

std::vector<TestFunction> default_test_suite(int dim) {
  if (dim < 1)
    throw std::invalid_argument("default_test_suite: dim must be >= 1");
  const auto mono = [dim](std::vector<std::pair<int, int>> x_pow,
                          std::vector<std::pair<int, int>> v_pow,
                          std::string name) {
    MonomialTerm t;
    t.coef = 1.0;
    t.x_exp = Eigen::VectorXi::Zero(dim);
    t.v_exp = Eigen::VectorXi::Zero(dim);
    for (auto [i, p] : x_pow) t.x_exp[i] += p;
    for (auto [i, p] : v_pow) t.v_exp[i] += p;
    return TestFunction(dim, {t}, std::move(name));
  };

  std::vector<TestFunction> suite;
  if (dim == 1) {
    suite.push_back(mono({{0, 1}}, {}, "x1"));
    suite.push_back(mono({}, {{0, 1}}, "v1"));
    suite.push_back(mono({{0, 2}}, {}, "x1^2"));
    suite.push_back(mono({}, {{0, 2}}, "v1^2"));
    suite.push_back(mono({{0, 1}}, {{0, 1}}, "x1*v1"));
    suite.push_back(mono({{0, 3}}, {}, "x1^3"));
    suite.push_back(mono({{0, 2}}, {{0, 1}}, "x1^2*v1"));
    suite.push_back(mono({{0, 4}}, {}, "x1^4"));
    suite.push_back(mono({{0, 2}}, {{0, 2}}, "x1^2*v1^2"));
    suite.push_back(mono({{0, 1}}, {{0, 3}}, "x1*v1^3"));
  } else {
    suite.push_back(mono({{0, 1}}, {}, "x1"));
    suite.push_back(mono({}, {{0, 1}}, "v1"));
    suite.push_back(mono({{0, 2}}, {}, "x1^2"));
    suite.push_back(mono({}, {{1, 2}}, "v2^2"));
    suite.push_back(mono({{0, 1}}, {{0, 1}}, "x1*v1"));
    suite.push_back(mono({{0, 1}, {1, 1}}, {}, "x1*x2"));
    suite.push_back(mono({}, {{0, 1}, {1, 1}}, "v1*v2"));
    suite.push_back(mono({{0, 2}}, {{1, 2}}, "x1^2*v2^2"));
    suite.push_back(mono({{1, 4}}, {}, "x2^4"));
    suite.push_back(
        mono({{0, 1}, {1, 1}}, {{0, 1}, {1, 1}}, "x1*x2*v1*v2"));
  }
  return suite;
}

BatchMeansResult batch_means_zscore(const std::vector<double>& values,
                                    int n_batches) {
  if (n_batches < 2)
    throw std::invalid_argument("batch_means_zscore: need >= 2 batches");
  const int batch = static_cast<int>(values.size()) / n_batches;
  if (batch < 1)
    throw std::invalid_argument("batch_means_zscore: too few values");

  std::vector<double> bm(n_batches, 0.0);
  for (int b = 0; b < n_batches; ++b) {
    double acc = 0.0;
    for (int i = 0; i < batch; ++i) acc += values[b * batch + i];
    bm[b] = acc / batch;
  }
  BatchMeansResult out;
  for (double m : bm) out.mean += m;
  out.mean /= n_batches;
  double ss = 0.0;
  for (double m : bm) ss += (m - out.mean) * (m - out.mean);
  out.std_error = std::sqrt(ss / (n_batches - 1) / n_batches);
  if (out.std_error == 0.0) {
    if (out.mean == 0.0) {
      out.z = 0.0;
      return out;
    }
    throw std::runtime_error(
        "batch_means_zscore: zero batch variance with nonzero mean");
  }
  out.z = out.mean / out.std_error;
  return out;
}

double GeneratorTestResult::max_abs_z() const {
  double out = 0.0;
  for (double z : z_scores) out = std::max(out, std::abs(z));
  return out;
}

GeneratorTestResult generator_invariance_test(
    const Skeleton& skeleton, const std::vector<TestFunction>& test_fns,
    int n_batches) {
  if (test_fns.empty())
    throw std::invalid_argument("generator test: empty test-function list");
  if (skeleton.constrained())
    throw std::invalid_argument(
        "generator test: wall reflections add boundary terms; unconstrained "
        "chains only");
  if (!skeleton.target())
    throw std::invalid_argument("generator test: skeleton lacks a target");

  const SamplerConfig& cfg = skeleton.config();
  const TargetModel target = TargetModel::gaussian(*skeleton.target());
  const int d = skeleton.dim();
  for (const TestFunction& fn : test_fns)
    if (fn.dim() != d)
      throw std::invalid_argument("generator test: test-function dim mismatch");

  const DiscretizedChain chain = discretize(skeleton, cfg.delta);
  const double burn = 0.1 * skeleton.total_time();
  int first = 0;
  while (first < chain.size() && chain.times[first] <= burn) ++first;
  const int n_used = chain.size() - first;
  if (n_used < n_batches)
    throw std::invalid_argument("generator test: chain too short after burn-in");

  std::vector<double> gamma = cfg.cbhs_gamma;
  if (gamma.empty()) gamma.assign(d, 0.0);
  const bool full_refresh =
      cfg.refresh_angle == std::numbers::pi / 2.0;

  const std::size_t n_fns = test_fns.size();
  std::vector<std::vector<double>> af(n_fns,
                                      std::vector<double>(n_used, 0.0));
  for (int i = 0; i < n_used; ++i) {
    const Eigen::VectorXd x = chain.positions.row(first + i).transpose();
    const Eigen::VectorXd v = chain.velocities.row(first + i).transpose();
    const Eigen::VectorXd gx = evaluate_guide(cfg.guide, target, x);
    const Eigen::VectorXd drift = gx - target.grad_potential(x);

    if (skeleton.family() == SamplerFamily::Joint) {
      const double bounce_rate = std::max(0.0, v.dot(gx));
      Eigen::VectorXd rv;
      if (bounce_rate > 0.0 && gx.norm() > 1e-14)
        rv = bounce_deterministic(v, gx);
      for (std::size_t fi = 0; fi < n_fns; ++fi) {
        const TestFunction& f = test_fns[fi];
        double val = f.grad_x(x, v).dot(v) + f.grad_v(x, v).dot(drift);
        if (rv.size() > 0)
          val += bounce_rate * (f.eval(x, rv) - f.eval(x, v));
        if (cfg.lambda0 > 0.0) {
          const double avg = full_refresh
                                 ? f.full_refresh_average(x)
                                 : f.partial_refresh_average(x, v,
                                                             cfg.refresh_angle);
          val += cfg.lambda0 * (avg - f.eval(x, v));
        }
        af[fi][i] = val;
      }
    } else {
      for (std::size_t fi = 0; fi < n_fns; ++fi) {
        const TestFunction& f = test_fns[fi];
        const Eigen::VectorXd gxf = f.grad_x(x, v);
        const Eigen::VectorXd gvf = f.grad_v(x, v);
        double val = gxf.dot(v) + gvf.dot(drift);
        const double fv = f.eval(x, v);
        for (int c = 0; c < d; ++c) {
          const double rate = std::max(0.0, v[c] * gx[c]) + gamma[c];
          if (rate == 0.0) continue;
          val += rate * (f.eval(x, coordinate_flip(v, c)) - fv);
        }
        af[fi][i] = val;
      }
    }
  }

  GeneratorTestResult out;
  for (std::size_t fi = 0; fi < n_fns; ++fi) {
    const BatchMeansResult bm = batch_means_zscore(af[fi], n_batches);
    out.names.push_back(test_fns[fi].name());
    out.means.push_back(bm.mean);
    out.std_errors.push_back(bm.std_error);
    out.z_scores.push_back(bm.z);
  }
  return out;
}

double ks_statistic_standard_normal(std::vector<double> values) {
  if (values.empty())
    throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double cdf = normal_cdf(values[i]);
    d = std::max(d, std::abs((i + 1) / n - cdf));
    d = std::max(d, std::abs(cdf - i / n));
  }
  return d;
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double xa = a[i], xb = b[j];
    if (xa <= xb) ++i;
    if (xb <= xa) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

int autocorr_thinning_lag(const std::vector<double>& series, double threshold) {
  const int n = static_cast<int>(series.size());
  if (n < 4)
    throw std::invalid_argument("autocorr_thinning_lag: series too short");
  double mean = 0.0;
  for (double y : series) mean += y;
  mean /= n;
  double denom = 0.0;
  for (double y : series) denom += (y - mean) * (y - mean);
  if (denom == 0.0) return 1;
  const int max_lag = n / 2;
  for (int k = 1; k <= max_lag; ++k) {
    double acc = 0.0;
    for (int i = 0; i + k < n; ++i)
      acc += (series[i] - mean) * (series[i + k] - mean);
    if (std::abs(acc / denom) < threshold) return k;
  }
  return max_lag;
}

std::vector<double> thin_series(const std::vector<double>& series, int stride) {
  if (stride < 1)
    throw std::invalid_argument("thin_series: stride must be >= 1");
  std::vector<double> out;
  out.reserve(series.size() / stride + 1);
  for (std::size_t i = 0; i < series.size(); i += stride)
    out.push_back(series[i]);
  return out;
}

}  // namespace bhs

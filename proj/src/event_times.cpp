#include "bhs/event_times.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace bhs {

namespace {

// Contact roots at or below this are treated as the wall the segment just
// departed from.
constexpr double kRootSkipTolerance = 1e-12;

// Solve g(t) = target for nondecreasing g on [lo, hi] by bisection, assuming
// g(lo) <= target <= g(hi). Interval is narrowed well below the 1e-10
// absolute tolerance the callers require, at a handful of extra halvings.
template <typename F>
double bisect_increasing(const F& g, double lo, double hi, double target) {
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi));
       ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double sample_refresh_time(double lambda0, RngStream& rng) {
  return rng.exponential(lambda0);
}

double first_arrival_affine_rate(double alpha, double beta, double neg_log_u) {
  if (!(neg_log_u > 0.0))
    throw std::invalid_argument("first_arrival_affine_rate: budget must be > 0");
  const double B = neg_log_u;
  if (alpha == 0.0) return beta > 0.0 ? B / beta : kInfiniteTime;
  if (alpha > 0.0) {
    // Rate eventually grows without bound; arrival always finite.
    const double t0 = beta >= 0.0 ? 0.0 : -beta / alpha;
    const double b0 = std::max(beta + alpha * t0, 0.0);
    // Stable smaller root of (alpha/2) t^2 + b0 t = B.
    return t0 + 2.0 * B / (b0 + std::sqrt(b0 * b0 + 2.0 * alpha * B));
  }
  // alpha < 0: rate decays; hazard saturates at beta^2 / (-2 alpha).
  if (beta <= 0.0) return kInfiniteTime;
  const double total = beta * beta / (-2.0 * alpha);
  if (B >= total) return kInfiniteTime;
  return 2.0 * B / (beta + std::sqrt(beta * beta + 2.0 * alpha * B));
}

double first_arrival_sin_rate(double M, double w, double theta0,
                              double neg_log_u) {
  if (!(w > 0.0))
    throw std::invalid_argument("first_arrival_sin_rate: w must be > 0");
  if (!(neg_log_u > 0.0))
    throw std::invalid_argument("first_arrival_sin_rate: budget must be > 0");
  if (M == 0.0) return kInfiniteTime;

  const double pi = std::numbers::pi;
  const double B = neg_log_u;
  const double period = 2.0 * pi / w;
  const double per_period = 2.0 * std::abs(M) / w;  // hazard gained per period

  // Skip whole periods analytically; L in [0, per_period) remains.
  const double n = std::floor(B / per_period);
  const double L = B - n * per_period;
  const double Tn = n * period;

  // First zero of sin(theta0 + w t) at or after Tn: t_k = (k pi - theta0)/w.
  double k1 = std::ceil(2.0 * n + theta0 / pi);
  double t1 = (k1 * pi - theta0) / w;
  if (t1 < Tn) {  // guard ceil roundoff at exact-integer boundaries
    k1 += 1.0;
    t1 = (k1 * pi - theta0) / w;
  }
  const double t2 = ((k1 + 1.0) * pi - theta0) / w;

  // Antiderivative of the signed rate; increments on positive arcs equal
  // hazard increments.
  const auto anti = [&](double t) { return -(M / w) * std::cos(theta0 + w * t); };

  // Sign of the rate on the full arc (t1, t2): sign(M) * (-1)^{k1}.
  const bool k1_even = std::fmod(std::fmod(k1, 2.0) + 2.0, 2.0) < 0.5;
  const bool arc_after_t1_positive = k1_even ? (M > 0.0) : (M < 0.0);

  double lo, hi, base, target;
  if (arc_after_t1_positive) {
    // Partial arc [Tn, t1] is nonpositive: all of L lands in [t1, t2].
    lo = base = t1;
    hi = t2;
    target = L;
  } else {
    // Partial arc [Tn, t1] is positive with mass I; overflow continues in the
    // next positive arc [t2, t2 + pi/w].
    const double I = anti(t1) - anti(Tn);
    if (L <= I) {
      lo = base = Tn;
      hi = t1;
      target = L;
    } else {
      lo = base = t2;
      hi = t2 + pi / w;
      target = L - I;
    }
  }
  const double base_val = anti(base);
  return bisect_increasing([&](double t) { return anti(t) - base_val; }, lo, hi,
                           target);
}

double bounce_time_univariate(const UnivariateFlow& flow, double u) {
  if (!(u > 0.0 && u < 1.0))
    throw std::invalid_argument("bounce_time_univariate: u outside (0, 1)");
  const double B = -std::log(u);
  const double a = flow.a();

  switch (flow.regime()) {
    case UnivariateFlow::Regime::Hyperbolic: {
      // rate(t) = (a s / 4)(c1^2 e^{2 s t} - c2^2 e^{-2 s t}), a > 1.
      const double s = flow.frequency();
      const double c1 = flow.c1();
      const double c2 = flow.c2();
      if (c1 == 0.0) return kInfiniteTime;  // rate <= 0 for all t
      const double c1sq = c1 * c1;
      const double c2sq = c2 * c2;
      double t0 = 0.0;
      if (c2 != 0.0) t0 = std::max(0.0, std::log(c2sq / c1sq) / (4.0 * s));
      const auto hazard = [&](double t) {
        return (a / 8.0) *
               (c1sq * std::exp(2.0 * s * t) + c2sq * std::exp(-2.0 * s * t));
      };
      const double base = hazard(t0);
      double lo = t0;
      double step = 1.0;
      double hi = t0 + step;
      while (hazard(hi) - base < B) {
        lo = hi;
        step *= 2.0;
        hi = t0 + step;
      }
      return bisect_increasing([&](double t) { return hazard(t) - base; }, lo,
                               hi, B);
    }
    case UnivariateFlow::Regime::Trigonometric: {
      // rate(t) = (a x v)_+ = (M sin(2 phase + 2 w t))_+, M = -a r^2 w / 2.
      if (a == 0.0) return kInfiniteTime;
      const double w = flow.frequency();
      const double r = flow.polar_radius();
      if (r == 0.0) return kInfiniteTime;
      const double M = -a * r * r * w / 2.0;
      return first_arrival_sin_rate(M, 2.0 * w, 2.0 * flow.polar_phase(), B);
    }
    case UnivariateFlow::Regime::Linear: {
      // a = 1: rate(t) = (c1^2 t + c1 c2)_+.
      const double c1 = flow.c1();
      if (c1 == 0.0) return kInfiniteTime;
      return first_arrival_affine_rate(c1 * c1, c1 * flow.c2(), B);
    }
  }
  throw std::logic_error("bounce_time_univariate: unreachable");
}

RateFunction quadratic_bounce_rate(const QuadraticFlow& flow) {
  const Eigen::MatrixXd M = flow.P_inverse().transpose() *
                            flow.guide_matrix().transpose() * flow.P_inverse();
  return [flow, M](double t) {
    auto [y, ydot] = flow.evaluate_transformed(t);
    return std::max(0.0, y.dot(M * ydot));
  };
}

double spectral_norm(const Eigen::MatrixXd& M, double rel_tol) {
  if (M.size() == 0 || M.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const Eigen::MatrixXd G = M.transpose() * M;
  const int d = static_cast<int>(G.rows());
  // Deterministic start with unequal components so no eigendirection is
  // exactly orthogonal by symmetry.
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v[i] = 1.0 + 0.01 * static_cast<double>(i + 1);
  v.normalize();
  double sigma_prev = 0.0;
  for (int iter = 0; iter < 100000; ++iter) {
    Eigen::VectorXd gv = G * v;
    const double lambda = v.dot(gv);
    const double sigma = std::sqrt(std::max(lambda, 0.0));
    const double norm = gv.norm();
    if (norm == 0.0) return 0.0;
    v = gv / norm;
    if (iter > 0 && std::abs(sigma - sigma_prev) <= rel_tol * std::max(sigma, 1e-300))
      return sigma;
    sigma_prev = sigma;
  }
  throw std::runtime_error("spectral_norm: power iteration failed to converge");
}

ThinningBound constant_thinning_bound(const QuadraticFlow& flow) {
  const Eigen::MatrixXd M = flow.P_inverse().transpose() *
                            flow.guide_matrix().transpose() * flow.P_inverse();
  return constant_thinning_bound(flow, spectral_norm(M));
}

ThinningBound constant_thinning_bound(const QuadraticFlow& flow,
                                      double guide_spectral_norm) {
  const int d = flow.dim();
  const Eigen::VectorXd& a = flow.a_diag();
  for (int k = 0; k < d; ++k)
    if (a[k] >= 0.0)
      throw std::invalid_argument(
          "constant_thinning_bound: requires every a_k < 0");
  double pos_sq = 0.0;  // bounds ||y(t)||^2
  double vel_sq = 0.0;  // bounds ||ydot(t)||^2
  for (int k = 0; k < d; ++k) {
    const double c1 = std::abs(flow.C1()[k]);
    const double c2 = std::abs(flow.C2()[k]);
    const double Bk = std::max(c1, c2) * std::max(c1, c2) + c1 * c2;
    const double ok = std::abs(flow.equilibrium_shift()[k]);
    pos_sq += Bk + 2.0 * std::sqrt(Bk) * ok + ok * ok;
    vel_sq += -a[k] * Bk;
  }
  return ThinningBound{std::sqrt(pos_sq) * guide_spectral_norm *
                       std::sqrt(vel_sq)};
}

double sample_bounce_thinning(const RateFunction& rate, ThinningBound bound,
                              double horizon, RngStream& rng) {
  const double lambda_max = bound.lambda_max;
  if (!(lambda_max >= 0.0) || std::isinf(lambda_max))
    throw std::invalid_argument("sample_bounce_thinning: invalid bound");
  if (lambda_max == 0.0) return kInfiniteTime;
  const double cap = std::min(horizon, 1e6 / lambda_max);
  double t = 0.0;
  while (true) {
    t += rng.exponential(lambda_max);
    if (t > cap) return kInfiniteTime;
    const double lam = rate(t);
    if (!(lam >= 0.0))
      throw std::runtime_error("sample_bounce_thinning: rate evaluated < 0 or NaN");
    if (lam > lambda_max * (1.0 + 1e-9))
      throw std::runtime_error(
          "sample_bounce_thinning: rate exceeds the dominating bound");
    if (rng.uniform() < lam / lambda_max) return t;
  }
}

WallHit wall_hit_time(const QuadraticFlow& flow,
                      const ConstraintSet& constraints) {
  const int d = flow.dim();
  const int m = constraints.count();
  if (constraints.dim() != d)
    throw std::invalid_argument("wall_hit_time: constraint dim mismatch");

  const Eigen::VectorXd& a = flow.a_diag();
  const double a0 = a[0];
  if (!(a0 < 0.0))
    throw std::invalid_argument("wall_hit_time: requires a < 0");
  for (int k = 1; k < d; ++k)
    if (std::abs(a[k] - a0) > 1e-12 * std::max(1.0, std::abs(a0)))
      throw std::invalid_argument(
          "wall_hit_time: requires equal a_diag entries");

  WallHit out;
  out.amplitude = Eigen::VectorXd::Zero(m);
  out.phase = Eigen::VectorXd::Zero(m);
  out.level = Eigen::VectorXd::Zero(m);
  if (m == 0) return out;

  const auto start = flow.evaluate(0.0);
  if (constraints.values(start.first).minCoeff() < -kConstraintTol)
    throw std::invalid_argument("wall_hit_time: start point infeasible");

  const double w = std::sqrt(-a0);
  // Constraint j along the flow: K_j^T y(t) + h_j =
  //   u_j cos(w t + phi_j) + q_j with K = P^{-T} F.
  const Eigen::MatrixXd Kt =
      (flow.P_inverse().transpose() * constraints.F).transpose();  // m x d
  const Eigen::VectorXd cvec = Kt * flow.C1();
  const Eigen::VectorXd svec = Kt * flow.C2();
  const Eigen::VectorXd qvec = constraints.h - Kt * flow.equilibrium_shift();

  const double two_pi = 2.0 * std::numbers::pi;
  for (int j = 0; j < m; ++j) {
    const double uj = std::hypot(cvec[j], svec[j]);
    const double phij = uj > 0.0 ? std::atan2(-svec[j], cvec[j]) : 0.0;
    const double qj = qvec[j];
    out.amplitude[j] = uj;
    out.phase[j] = phij;
    out.level[j] = qj;
    if (!(uj > std::abs(qj))) continue;  // unreachable (tangency excluded)
    out.reachable.push_back(j);

    // Zero-contact phases: w t + phi_j = +-beta (mod 2 pi).
    const double beta = std::acos(std::clamp(-qj / uj, -1.0, 1.0));
    for (const double branch : {beta, -beta}) {
      for (int k = 0; k <= 2; ++k) {
        const double t = (branch - phij + two_pi * k) / w;
        if (t > kRootSkipTolerance && t < out.tau) {
          out.tau = t;
          out.wall_index = j;
        }
      }
    }
  }
  return out;
}

}  // namespace bhs

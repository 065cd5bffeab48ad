#include "bhs/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "bhs/event_times.hpp"
#include "bhs/kernels.hpp"
#include "bhs/normal.hpp"
#include "bhs/rng.hpp"

namespace bhs {

namespace {

// xddot = kappa x + forcing with kappa < 0: harmonic motion about
// center = -forcing/kappa with angular frequency omega = sqrt(-kappa).
struct Oscillator1D {
  double center = 0.0, rho = 0.0, omega = 0.0, psi = 0.0;

  static Oscillator1D solve(double kappa, double forcing, double x0,
                            double v0) {
    Oscillator1D o;
    o.omega = std::sqrt(-kappa);
    o.center = -forcing / kappa;
    const double dx = x0 - o.center;
    const double sv = v0 / o.omega;
    o.rho = std::hypot(dx, sv);
    o.psi = o.rho > 0.0 ? std::atan2(-sv, dx) : 0.0;
    return o;
  }

  PhasePoint1D evaluate(double t) const {
    const double theta = omega * t + psi;
    return {center + rho * std::cos(theta), -rho * omega * std::sin(theta)};
  }
};

// Advance accumulated time, keeping event times strictly increasing even
// when tau underflows the spacing of doubles near t.
double advance_time(double t, double tau) {
  double next = t + tau;
  if (next <= t) next = std::nextafter(t, std::numeric_limits<double>::infinity());
  return next;
}

Eigen::VectorXd apply_bounce(const Eigen::VectorXd& v, const Eigen::VectorXd& g,
                             const SamplerConfig& config, RngStream& rng) {
  if (config.corrupt_kernel) return v;
  if (config.bounce_kernel.variant == BounceKernelSpec::Variant::Stochastic)
    return bounce_stochastic(v, g, rng);
  return bounce_deterministic(v, g);
}

Eigen::VectorXd apply_refresh(const Eigen::VectorXd& v,
                              const SamplerConfig& config, RngStream& rng) {
  return refresh_partial(v, config.refresh_angle, rng);
}

Eigen::VectorXd scalar_vec(double x) {
  Eigen::VectorXd out(1);
  out[0] = x;
  return out;
}

void check_initial(const State& initial, int dim) {
  if (initial.position.size() != dim || initial.velocity.size() != dim)
    throw std::invalid_argument("sampler: initial state dimension mismatch");
}

// Bouncy sampler on the univariate standard normal with guide g(x) = a x;
// bounce times by exact inverse transform of the cumulative hazard.
Skeleton run_univariate_bhs(const GaussianTarget& target, double a,
                            const SamplerConfig& config,
                            const State& initial) {
  RngStream rng(config.seed);
  const double T = config.T_total;
  double x = initial.position[0];
  double v = initial.velocity[0];
  double t = 0.0;

  std::vector<EventRecord> events;
  events.push_back({0.0, scalar_vec(x), scalar_vec(v), EventKind::Start, -1, -1});

  while (true) {
    const UnivariateFlow flow = UnivariateFlow::solve(a, x, v);
    const double tau_refresh = sample_refresh_time(config.lambda0, rng);
    const double tau_bounce = bounce_time_univariate(flow, rng.uniform());
    const double tau = std::min(tau_bounce, tau_refresh);
    const double t_rem = T - t;
    if (tau >= t_rem) {
      const PhasePoint1D p = flow.evaluate(t_rem);
      events.push_back(
          {T, scalar_vec(p.x), scalar_vec(p.v), EventKind::End, -1, -1});
      break;
    }
    const PhasePoint1D p = flow.evaluate(tau);
    x = p.x;
    v = p.v;
    t = advance_time(t, tau);
    if (tau_bounce <= tau_refresh) {
      // In one dimension every bounce is the exact sign flip (for both kernel
      // variants), so the near-zero-guide guard cannot trip a valid event.
      if (!config.corrupt_kernel) v = -v;
      events.push_back(
          {t, scalar_vec(x), scalar_vec(v), EventKind::Bounce, -1, -1});
    } else {
      v = apply_refresh(scalar_vec(v), config, rng)[0];
      events.push_back(
          {t, scalar_vec(x), scalar_vec(v), EventKind::Refresh, -1, -1});
    }
  }

  FlowSpec spec;
  spec.kind = FlowSpec::Kind::Univariate;
  spec.a = a;
  return Skeleton(std::move(events), std::move(spec), config, target,
                  SamplerFamily::Joint, false);
}

// Straight-line sampler (g = grad U) on a Gaussian target; the bounce rate
// (v^T Sigma^{-1}(x + t v - mu))_+ is affine in t and inverted exactly.
Skeleton run_linear_bps(const GaussianTarget& target,
                        const SamplerConfig& config, const State& initial) {
  RngStream rng(config.seed);
  const double T = config.T_total;
  const Eigen::MatrixXd& Q = target.precision;
  Eigen::VectorXd x = initial.position;
  Eigen::VectorXd v = initial.velocity;
  double t = 0.0;

  std::vector<EventRecord> events;
  events.push_back({0.0, x, v, EventKind::Start, -1, -1});

  while (true) {
    const double tau_refresh = sample_refresh_time(config.lambda0, rng);
    const double beta = v.dot(Q * (x - target.mean));
    const double alpha = v.dot(Q * v);
    const double tau_bounce =
        first_arrival_affine_rate(alpha, beta, -std::log(rng.uniform()));
    const double tau = std::min(tau_bounce, tau_refresh);
    const double t_rem = T - t;
    if (tau >= t_rem) {
      events.push_back({T, x + t_rem * v, v, EventKind::End, -1, -1});
      break;
    }
    x += tau * v;
    t = advance_time(t, tau);
    if (tau_bounce <= tau_refresh) {
      v = apply_bounce(v, target.grad_potential(x), config, rng);
      events.push_back({t, x, v, EventKind::Bounce, -1, -1});
    } else {
      v = apply_refresh(v, config, rng);
      events.push_back({t, x, v, EventKind::Refresh, -1, -1});
    }
  }

  FlowSpec spec;
  spec.kind = FlowSpec::Kind::Linear;
  return Skeleton(std::move(events), std::move(spec), config, target,
                  SamplerFamily::Joint, false);
}

// Componentwise-flow sampler on a Gaussian with g = A x (A possibly zero);
// bounce times by thinning under the segment's constant dominating bound.
Skeleton run_quadratic_bhs(const GaussianTarget& target,
                           const Eigen::MatrixXd& A,
                           const SamplerConfig& config, const State& initial) {
  const int d = target.dim();
  const bool zero_guide = A.isZero(0.0);

  // Diagonalize once; per-segment solves reuse the transform.
  QuadraticFlow first =
      QuadraticFlow::from_guide_matrix(target, A, initial.position,
                                       initial.velocity);
  const Eigen::MatrixXd P = first.P();
  const Eigen::VectorXd a_diag = first.a_diag();
  if (!zero_guide) {
    for (int k = 0; k < d; ++k)
      if (a_diag[k] >= 0.0)
        throw std::invalid_argument(
            "run_bhs: thinning needs Sigma^{-1} - A positive definite "
            "(bounded flows)");
  }
  const double guide_norm =
      zero_guide ? 0.0
                 : spectral_norm(first.P_inverse().transpose() * A.transpose() *
                                 first.P_inverse());

  RngStream rng(config.seed);
  const double T = config.T_total;
  Eigen::VectorXd x = initial.position;
  Eigen::VectorXd v = initial.velocity;
  double t = 0.0;

  std::vector<EventRecord> events;
  events.push_back({0.0, x, v, EventKind::Start, -1, -1});

  while (true) {
    const QuadraticFlow flow = QuadraticFlow::solve(target, P, a_diag, x, v, A);
    const double t_rem = T - t;
    const double tau_refresh = sample_refresh_time(config.lambda0, rng);
    double tau_bounce = kInfiniteTime;
    if (!zero_guide) {
      const ThinningBound bound = constant_thinning_bound(flow, guide_norm);
      tau_bounce = sample_bounce_thinning(quadratic_bounce_rate(flow), bound,
                                          std::min(tau_refresh, t_rem), rng);
    }
    const double tau = std::min(tau_bounce, tau_refresh);
    if (tau >= t_rem) {
      auto [xe, ve] = flow.evaluate(t_rem);
      events.push_back({T, xe, ve, EventKind::End, -1, -1});
      break;
    }
    std::tie(x, v) = flow.evaluate(tau);
    t = advance_time(t, tau);
    if (tau_bounce <= tau_refresh) {
      v = apply_bounce(v, A * x, config, rng);
      events.push_back({t, x, v, EventKind::Bounce, -1, -1});
    } else {
      v = apply_refresh(v, config, rng);
      events.push_back({t, x, v, EventKind::Refresh, -1, -1});
    }
  }

  FlowSpec spec;
  spec.kind = FlowSpec::Kind::Quadratic;
  spec.P = P;
  spec.a_diag = a_diag;
  return Skeleton(std::move(events), std::move(spec), config, target,
                  SamplerFamily::Joint, false);
}

bool is_univariate_standard_normal(const GaussianTarget& target) {
  return target.dim() == 1 && target.mean[0] == 0.0 &&
         target.covariance(0, 0) == 1.0;
}

// Zig-zag engine: g = grad U on a Gaussian; all candidate flows coincide
// with straight-line motion and every per-coordinate rate is affine in t.
Skeleton run_cbhs_zigzag(const GaussianTarget& target,
                         const SamplerConfig& config, const State& initial,
                         const std::vector<double>& gamma) {
  RngStream rng(config.seed);
  const int d = target.dim();
  const double T = config.T_total;
  const Eigen::MatrixXd& Q = target.precision;
  Eigen::VectorXd x = initial.position;
  Eigen::VectorXd v = initial.velocity;
  double t = 0.0;

  std::vector<EventRecord> events;
  events.push_back({0.0, x, v, EventKind::Start, -1, -1});

  while (true) {
    const double t_rem = T - t;
    const Eigen::VectorXd Qd = Q * (x - target.mean);
    const Eigen::VectorXd Qv = Q * v;
    double best = kInfiniteTime;
    int best_i = -1;
    for (int i = 0; i < d; ++i) {
      double tau_i = first_arrival_affine_rate(v[i] * Qv[i], v[i] * Qd[i],
                                               -std::log(rng.uniform()));
      if (gamma[i] > 0.0) tau_i = std::min(tau_i, rng.exponential(gamma[i]));
      if (tau_i < best) {
        best = tau_i;
        best_i = i;
      }
    }
    if (best >= t_rem) {
      events.push_back({T, x + t_rem * v, v, EventKind::End, -1, -1});
      break;
    }
    x += best * v;
    t = advance_time(t, best);
    if (!config.corrupt_kernel) v = coordinate_flip(v, best_i);
    events.push_back({t, x, v, EventKind::CoordFlip, best_i, best_i});
  }

  FlowSpec spec;
  spec.kind = FlowSpec::Kind::Linear;
  return Skeleton(std::move(events), std::move(spec), config, target,
                  SamplerFamily::Factorized, false);
}

// Factorized oscillator engine: diagonal Gaussian, diagonal guide. The
// candidate flow for coordinate i oscillates that coordinate
// (xddot_i = kappa_i x_i + forcing_i) and moves the rest linearly; arrival
// times by per-coordinate thinning under an amplitude bound.
Skeleton run_cbhs_oscillator(const GaussianTarget& target,
                             const Eigen::VectorXd& A_diag,
                             const SamplerConfig& config, const State& initial,
                             const std::vector<double>& gamma) {
  RngStream rng(config.seed);
  const int d = target.dim();
  const double T = config.T_total;
  Eigen::VectorXd kappa(d), forcing(d);
  for (int i = 0; i < d; ++i) {
    const double qii = target.precision(i, i);
    kappa[i] = A_diag[i] - qii;
    forcing[i] = qii * target.mean[i];
    if (!(kappa[i] < 0.0))
      throw std::invalid_argument(
          "run_cbhs: oscillator engine needs A_ii < 1/sigma_i^2 in every "
          "coordinate");
  }

  Eigen::VectorXd x = initial.position;
  Eigen::VectorXd v = initial.velocity;
  double t = 0.0;
  std::vector<EventRecord> events;
  events.push_back({0.0, x, v, EventKind::Start, -1, -1});

  while (true) {
    const double t_rem = T - t;
    double best = kInfiniteTime;
    int best_i = -1;
    std::vector<Oscillator1D> osc(d);
    for (int i = 0; i < d; ++i) {
      osc[i] = Oscillator1D::solve(kappa[i], forcing[i], x[i], v[i]);
      const Oscillator1D& o = osc[i];
      double tau_i = kInfiniteTime;
      const double lambda_max = std::abs(A_diag[i]) *
                                (std::abs(o.center) + o.rho) * o.rho * o.omega;
      if (lambda_max > 0.0) {
        // Candidate times are compared across coordinates, so each thinning
        // run only needs to search up to the current best (not t_rem: the
        // winner also drives the final truncated segment).
        const RateFunction rate = [&o, ai = A_diag[i]](double s) {
          const PhasePoint1D p = o.evaluate(s);
          return std::max(0.0, ai * p.x * p.v);
        };
        tau_i = sample_bounce_thinning(rate, ThinningBound{lambda_max}, best,
                                       rng);
      }
      if (gamma[i] > 0.0) tau_i = std::min(tau_i, rng.exponential(gamma[i]));
      if (tau_i < best) {
        best = tau_i;
        best_i = i;
      }
    }
    // All arrivals infinite only at an exact rest state (measure zero);
    // fall back to coordinate 0's flow deterministically.
    if (best_i < 0) best_i = 0;

    const double step = std::min(best, t_rem);
    for (int j = 0; j < d; ++j) {
      const PhasePoint1D p = osc[j].evaluate(step);
      x[j] = p.x;
      v[j] = p.v;
    }
    if (best >= t_rem) {
      events.push_back({T, x, v, EventKind::End, -1, best_i});
      break;
    }
    t = advance_time(t, best);
    if (!config.corrupt_kernel) v = coordinate_flip(v, best_i);
    events.push_back({t, x, v, EventKind::CoordFlip, best_i, best_i});
  }

  FlowSpec spec;
  spec.kind = FlowSpec::Kind::CoordinateOscillator;
  spec.kappa = kappa;
  spec.forcing = forcing;
  return Skeleton(std::move(events), std::move(spec), config, target,
                  SamplerFamily::Factorized, false);
}

bool is_diagonal(const Eigen::MatrixXd& M) {
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j)
      if (i != j && std::abs(M(i, j)) > 1e-12 * scale) return false;
  return true;
}

}  // namespace

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::Start: return "start";
    case EventKind::Bounce: return "bounce";
    case EventKind::Refresh: return "refresh";
    case EventKind::WallHit: return "wall_hit";
    case EventKind::CoordFlip: return "coord_flip";
    case EventKind::End: return "end";
  }
  return "unknown";
}

void SamplerConfig::validate() const {
  if (!(lambda0 >= 0.0) || std::isinf(lambda0))
    throw std::invalid_argument("SamplerConfig: lambda0 must be finite and >= 0");
  if (!(T_total > 0.0) || std::isinf(T_total))
    throw std::invalid_argument("SamplerConfig: T_total must be finite and > 0");
  if (!(delta > 0.0))
    throw std::invalid_argument("SamplerConfig: delta must be > 0");
  if (!(refresh_angle > 0.0 && refresh_angle <= std::numbers::pi / 2.0))
    throw std::invalid_argument("SamplerConfig: refresh_angle outside (0, pi/2]");
  for (double g : cbhs_gamma)
    if (!(g >= 0.0))
      throw std::invalid_argument("SamplerConfig: cbhs_gamma entries must be >= 0");
}

Skeleton::Skeleton(std::vector<EventRecord> events, FlowSpec flow,
                   SamplerConfig config, std::optional<GaussianTarget> target,
                   SamplerFamily family, bool constrained)
    : events_(std::move(events)),
      flow_(std::move(flow)),
      config_(std::move(config)),
      target_(std::move(target)),
      family_(family),
      constrained_(constrained) {
  if (events_.size() < 2)
    throw std::logic_error("Skeleton: needs at least Start and End events");
  if (events_.front().kind != EventKind::Start || events_.front().time != 0.0)
    throw std::logic_error("Skeleton: first event must be Start at time 0");
  if (events_.back().kind != EventKind::End)
    throw std::logic_error("Skeleton: last event must be End");
  for (std::size_t k = 1; k < events_.size(); ++k)
    if (!(events_[k].time > events_[k - 1].time))
      throw std::logic_error("Skeleton: event times must strictly increase");
}

State Skeleton::state_at(double t) const {
  const double T = total_time();
  if (t < -1e-12 || t > T * (1.0 + 1e-12) + 1e-12)
    throw std::invalid_argument("Skeleton: time outside [0, T_total]");
  t = std::clamp(t, 0.0, T);
  SegmentCursor cursor(*this);
  return cursor.state_at(t);
}

SegmentCursor::SegmentCursor(const Skeleton& skeleton) : skel_(skeleton) {
  prepare(0);
}

void SegmentCursor::prepare(std::size_t seg) {
  seg_ = seg;
  const EventRecord& ev = skel_.events()[seg];
  x0_ = ev.position;
  v0_ = ev.velocity_after;
  t0_ = ev.time;
  const FlowSpec& flow = skel_.flow();
  switch (flow.kind) {
    case FlowSpec::Kind::Linear:
      break;
    case FlowSpec::Kind::Univariate:
      univariate_ = UnivariateFlow::solve(flow.a, x0_[0], v0_[0]);
      break;
    case FlowSpec::Kind::Quadratic:
      quadratic_ = QuadraticFlow::solve(*skel_.target(), flow.P, flow.a_diag,
                                        x0_, v0_);
      break;
    case FlowSpec::Kind::CoordinateOscillator: {
      const int d = static_cast<int>(x0_.size());
      osc_center_.resize(d);
      osc_rho_.resize(d);
      osc_omega_.resize(d);
      osc_psi_.resize(d);
      for (int j = 0; j < d; ++j) {
        const Oscillator1D o = Oscillator1D::solve(flow.kappa[j],
                                                   flow.forcing[j], x0_[j],
                                                   v0_[j]);
        osc_center_[j] = o.center;
        osc_rho_[j] = o.rho;
        osc_omega_[j] = o.omega;
        osc_psi_[j] = o.psi;
      }
      break;
    }
  }
}

State SegmentCursor::state_at(double t) {
  const auto& events = skel_.events();
  if (t < last_t_)
    throw std::invalid_argument("SegmentCursor: time went backwards");
  last_t_ = t;
  while (seg_ + 2 < events.size() && t >= events[seg_ + 1].time)
    prepare(seg_ + 1);

  State out;
  out.time = t;
  if (seg_ + 2 == events.size() && t >= events.back().time) {
    out.position = events.back().position;
    out.velocity = events.back().velocity_after;
    return out;
  }
  const double dt = t - t0_;
  switch (skel_.flow().kind) {
    case FlowSpec::Kind::Linear:
      out.position = x0_ + dt * v0_;
      out.velocity = v0_;
      break;
    case FlowSpec::Kind::Univariate: {
      const PhasePoint1D p = univariate_.evaluate(dt);
      out.position = scalar_vec(p.x);
      out.velocity = scalar_vec(p.v);
      break;
    }
    case FlowSpec::Kind::Quadratic: {
      auto [xe, ve] = quadratic_->evaluate(dt);
      out.position = std::move(xe);
      out.velocity = std::move(ve);
      break;
    }
    case FlowSpec::Kind::CoordinateOscillator: {
      const int d = static_cast<int>(x0_.size());
      out.position.resize(d);
      out.velocity.resize(d);
      for (int j = 0; j < d; ++j) {
        const double theta = osc_omega_[j] * dt + osc_psi_[j];
        out.position[j] = osc_center_[j] + osc_rho_[j] * std::cos(theta);
        out.velocity[j] = -osc_rho_[j] * osc_omega_[j] * std::sin(theta);
      }
      break;
    }
  }
  return out;
}

Skeleton run_bhs(const TargetModel& target, const SamplerConfig& config,
                 const State& initial) {
  config.validate();
  const int d = target.dim();
  check_initial(initial, d);

  if (!target.is_gaussian())
    throw std::invalid_argument(
        "run_bhs: only Gaussian targets have exactly solvable flows here");
  const GaussianTarget& gt = target.gaussian_target();

  switch (config.guide.variant()) {
    case GuideField::Variant::Zero:
      return run_quadratic_bhs(gt, Eigen::MatrixXd::Zero(d, d), config,
                               initial);
    case GuideField::Variant::GradU:
      return run_linear_bps(gt, config, initial);
    case GuideField::Variant::Linear: {
      const Eigen::MatrixXd& A = config.guide.matrix();
      if (A.rows() != d)
        throw std::invalid_argument("run_bhs: guide matrix dimension mismatch");
      if (is_univariate_standard_normal(gt))
        return run_univariate_bhs(gt, A(0, 0), config, initial);
      return run_quadratic_bhs(gt, A, config, initial);
    }
    case GuideField::Variant::Custom:
      throw std::invalid_argument(
          "run_bhs: custom guides have no exactly solvable flow");
  }
  throw std::logic_error("run_bhs: unreachable");
}

Skeleton run_qbhs(const GaussianTarget& target, const ConstraintSet& constraints,
                  const Eigen::MatrixXd& P, double a,
                  const SamplerConfig& config, const State& initial) {
  config.validate();
  const int d = target.dim();
  check_initial(initial, d);
  if (constraints.dim() != d)
    throw std::invalid_argument("run_qbhs: constraint dimension mismatch");
  if (!(a < 0.0))
    throw std::invalid_argument("run_qbhs: requires a < 0");
  if (!constraints_satisfied(constraints, initial.position))
    throw std::invalid_argument("run_qbhs: initial point infeasible");

  const Eigen::MatrixXd A =
      target.precision + a * Eigen::MatrixXd::Identity(d, d);
  const Eigen::VectorXd a_diag = Eigen::VectorXd::Constant(d, a);

  // Snapshot the effective guide so diagnostics read the true dynamics.
  SamplerConfig stored = config;
  stored.guide = GuideField::linear(A);

  RngStream rng(config.seed);
  const double T = config.T_total;
  Eigen::VectorXd x = initial.position;
  Eigen::VectorXd v = initial.velocity;

  // A start point lying on a wall with outward velocity would make the first
  // segment exit the domain; apply the boundary reflection up front.
  if (constraints.count() > 0) {
    for (int pass = 0; pass <= constraints.count(); ++pass) {
      const Eigen::VectorXd vals = constraints.values(x);
      int exiting = -1;
      for (int j = 0; j < constraints.count(); ++j) {
        if (std::abs(vals[j]) <= kConstraintTol &&
            constraints.F.col(j).dot(v) < 0.0) {
          exiting = j;
          break;
        }
      }
      if (exiting < 0) break;
      if (pass == constraints.count())
        throw std::runtime_error(
            "run_qbhs: could not orient the initial velocity inward");
      v = wall_reflect(v, constraints.F.col(exiting));
    }
  }

  const QuadraticFlow first = QuadraticFlow::solve(target, P, a_diag, x, v, A);
  const double guide_norm =
      A.isZero(0.0) ? 0.0
                    : spectral_norm(first.P_inverse().transpose() *
                                    A.transpose() * first.P_inverse());

  double t = 0.0;
  std::vector<EventRecord> events;
  events.push_back({0.0, x, v, EventKind::Start, -1, -1});

  while (true) {
    const QuadraticFlow flow = QuadraticFlow::solve(target, P, a_diag, x, v, A);
    const double t_rem = T - t;
    const WallHit wall = wall_hit_time(flow, constraints);
    const double tau_refresh = sample_refresh_time(config.lambda0, rng);
    const ThinningBound bound = constant_thinning_bound(flow, guide_norm);
    const double tau_bounce = sample_bounce_thinning(
        quadratic_bounce_rate(flow), bound,
        std::min({tau_refresh, wall.tau, t_rem}), rng);
    const double tau = std::min({wall.tau, tau_bounce, tau_refresh});
    if (tau >= t_rem) {
      auto [xe, ve] = flow.evaluate(t_rem);
      events.push_back({T, xe, ve, EventKind::End, -1, -1});
      break;
    }
    std::tie(x, v) = flow.evaluate(tau);
    t = advance_time(t, tau);
    if (tau == wall.tau) {
      v = wall_reflect(v, constraints.F.col(wall.wall_index));
      events.push_back({t, x, v, EventKind::WallHit, wall.wall_index, -1});
    } else if (tau == tau_bounce) {
      v = apply_bounce(v, A * x, config, rng);
      events.push_back({t, x, v, EventKind::Bounce, -1, -1});
    } else {
      v = apply_refresh(v, config, rng);
      events.push_back({t, x, v, EventKind::Refresh, -1, -1});
    }
  }

  FlowSpec spec;
  spec.kind = FlowSpec::Kind::Quadratic;
  spec.P = P;
  spec.a_diag = a_diag;
  return Skeleton(std::move(events), std::move(spec), std::move(stored), target,
                  SamplerFamily::Joint,
                  constraints.count() > 0);
}

Skeleton run_cbhs(const TargetModel& target, const SamplerConfig& config,
                  const State& initial) {
  config.validate();
  const int d = target.dim();
  check_initial(initial, d);
  if (!target.is_gaussian())
    throw std::invalid_argument(
        "run_cbhs: only Gaussian targets have exact per-coordinate arrivals");
  const GaussianTarget& gt = target.gaussian_target();

  std::vector<double> gamma = config.cbhs_gamma;
  if (gamma.empty()) gamma.assign(d, 0.0);
  if (static_cast<int>(gamma.size()) != d)
    throw std::invalid_argument("run_cbhs: cbhs_gamma size mismatch");

  switch (config.guide.variant()) {
    case GuideField::Variant::GradU:
      return run_cbhs_zigzag(gt, config, initial, gamma);
    case GuideField::Variant::Linear: {
      const Eigen::MatrixXd& A = config.guide.matrix();
      if (A.rows() != d)
        throw std::invalid_argument("run_cbhs: guide matrix dimension mismatch");
      if (!is_diagonal(A) || !is_diagonal(gt.covariance))
        throw std::invalid_argument(
            "run_cbhs: linear guide requires diagonal Sigma and diagonal A");
      const Eigen::VectorXd A_diag = A.diagonal();
      const bool any_rate = A_diag.cwiseAbs().maxCoeff() > 0.0 ||
                            *std::max_element(gamma.begin(), gamma.end()) > 0.0;
      if (!any_rate)
        throw std::invalid_argument(
            "run_cbhs: all event rates are identically zero (A = 0 and "
            "gamma = 0 leaves the inter-event flow undefined)");
      return run_cbhs_oscillator(gt, A_diag, config, initial, gamma);
    }
    default:
      throw std::invalid_argument(
          "run_cbhs: supported guides are grad U (zig-zag) and diagonal linear");
  }
}

std::vector<Eigen::VectorXd> run_gibbs_truncated_mvn(
    const GaussianTarget& target, const ConstraintSet& constraints,
    int n_samples, std::uint64_t seed, const Eigen::VectorXd& initial) {
  const int d = target.dim();
  if (initial.size() != d)
    throw std::invalid_argument("run_gibbs: initial dimension mismatch");
  if (constraints.dim() != d)
    throw std::invalid_argument("run_gibbs: constraint dimension mismatch");
  if (n_samples < 0)
    throw std::invalid_argument("run_gibbs: n_samples must be >= 0");
  if (!constraints_satisfied(constraints, initial))
    throw std::invalid_argument("run_gibbs: initial point infeasible");

  const Eigen::MatrixXd& Q = target.precision;
  const int m = constraints.count();
  RngStream rng(seed);
  Eigen::VectorXd x = initial;
  std::vector<Eigen::VectorXd> out;
  out.reserve(n_samples);

  for (int it = 0; it < n_samples; ++it) {
    for (int i = 0; i < d; ++i) {
      // Conditional N(m_i, 1/Q_ii) from the precision parameterization.
      double cross = 0.0;
      for (int k = 0; k < d; ++k)
        if (k != i) cross += Q(i, k) * (x[k] - target.mean[k]);
      const double cond_mean = target.mean[i] - cross / Q(i, i);
      const double cond_sd = 1.0 / std::sqrt(Q(i, i));

      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      for (int j = 0; j < m; ++j) {
        const double fij = constraints.F(i, j);
        double rest = constraints.h[j];
        for (int k = 0; k < d; ++k)
          if (k != i) rest += constraints.F(k, j) * x[k];
        if (fij > 0.0)
          lo = std::max(lo, -rest / fij);
        else if (fij < 0.0)
          hi = std::min(hi, -rest / fij);
        else if (rest < -kConstraintTol)
          throw std::runtime_error(
              "run_gibbs: state violates a constraint not involving the "
              "updated coordinate");
      }
      if (!(lo < hi))
        throw std::runtime_error("run_gibbs: empty conditional interval");
      x[i] = truncated_normal_inverse_cdf(cond_mean, cond_sd, lo, hi,
                                          rng.uniform());
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace bhs

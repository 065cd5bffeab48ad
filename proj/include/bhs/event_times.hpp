#pragma once

#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "bhs/flows.hpp"
#include "bhs/model.hpp"
#include "bhs/rng.hpp"

namespace bhs {

inline constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

//! Time to the next velocity refreshment, Exp(lambda0); +infinity when
//! lambda0 = 0.
double sample_refresh_time(double lambda0, RngStream& rng);

//! First arrival time of an inhomogeneous Poisson process with rate
//! (beta + alpha t)_+ and exhausted budget neg_log_u = -log(u) > 0.
//! Closed form; returns +infinity when the total hazard stays below budget.
double first_arrival_affine_rate(double alpha, double beta, double neg_log_u);

//! First arrival time for rate (M sin(theta0 + w t))_+ with w > 0.
//! Skips whole periods analytically (each contributes hazard 2|M|/w), locates
//! the bracketing sign-definite arc, and bisects the antiderivative there.
double first_arrival_sin_rate(double M, double w, double theta0,
                              double neg_log_u);

//! Exact bounce time along a univariate flow with event rate
//! (a x_t v_t)_+, by inverse transform of the cumulative hazard at budget
//! -log(u). Returns +infinity when the hazard never reaches the budget.
double bounce_time_univariate(const UnivariateFlow& flow, double u);

//! Scalar event rate as a function of time along a fixed flow segment.
using RateFunction = std::function<double(double)>;

//! Bounce rate t -> (g(x_t)^T v_t)_+ = (y_t^T P^{-T} A^T P^{-1} ydot_t)_+
//! along a componentwise flow.
RateFunction quadratic_bounce_rate(const QuadraticFlow& flow);

//! Spectral norm by power iteration on M^T M, relative tolerance 1e-10.
double spectral_norm(const Eigen::MatrixXd& M, double rel_tol = 1e-10);

struct ThinningBound {
  double lambda_max = 0.0;
};

//! Constant dominating bound for the bounce rate along a componentwise flow:
//!   Lambda = sqrt(sum_k (B_k + 2 sqrt(B_k)|o_k| + o_k^2))
//!            * ||P^{-T} A^T P^{-1}||_2
//!            * sqrt(sum_k (-a_k) B_k),
//! with B_k = max{|C1_k|, |C2_k|}^2 + |C1_k C2_k|. Requires every a_k < 0
//! (bounded trajectories). The precomputed spectral norm overload avoids
//! re-running power iteration when the norm is segment-invariant.
ThinningBound constant_thinning_bound(const QuadraticFlow& flow);
ThinningBound constant_thinning_bound(const QuadraticFlow& flow,
                                      double guide_spectral_norm);

//! First accepted event of a thinning sampler over the given rate with
//! constant dominating bound. Candidates are proposed at rate lambda_max up
//! to min(horizon, 1e6/lambda_max); returns +infinity when none is accepted.
//! Throws if an evaluated rate exceeds the bound beyond relative slack 1e-9.
double sample_bounce_thinning(const RateFunction& rate, ThinningBound bound,
                              double horizon, RngStream& rng);

//! Per-wall contact geometry along an equal-frequency oscillatory flow.
//! Constraint j evolves as u_j cos(w t + phi_j) + q_j with w = sqrt(-a);
//! the wall is reachable iff u_j > |q_j| (tangency does not count).
struct WallHit {
  double tau = kInfiniteTime;  // first strictly positive contact time
  int wall_index = -1;         // -1 when no wall is reachable
  Eigen::VectorXd amplitude;   // u_j
  Eigen::VectorXd phase;       // phi_j
  Eigen::VectorXd level;       // q_j
  std::vector<int> reachable;
};

//! First wall contact for a flow whose a_diag entries are all equal and
//! negative. Contact roots at t <= 1e-12 are skipped (a segment may start on
//! the wall it just reflected from). Requires the start point feasible to
//! kConstraintTol.
WallHit wall_hit_time(const QuadraticFlow& flow,
                      const ConstraintSet& constraints);

}  // namespace bhs

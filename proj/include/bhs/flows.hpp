#pragma once

#include <optional>
#include <utility>

#include <Eigen/Core>

#include "bhs/model.hpp"

namespace bhs {

struct PhasePoint1D {
  double x = 0.0;
  double v = 0.0;
};

//! Closed-form flow for the univariate standard normal target with linear
//! guide g(x) = a x: xdot = v, vdot = -x + a x, i.e. xddot = (a - 1) x.
//!
//! The regime is keyed on a: a > 1 hyperbolic, a < 1 trigonometric, a = 1
//! linear. Stored constants follow the two-mode conventions
//!   a > 1:  x_t = (c1 e^{s t} + c2 e^{-s t}) / 2,      s = sqrt(a - 1),
//!           c1 = x0 + v0/s, c2 = x0 - v0/s
//!   a < 1:  x_t = c1 cos(w t) + c2 sin(w t),           w = sqrt(1 - a),
//!           c1 = x0, c2 = v0/w;  polar form x_t = r cos(phase + w t)
//!           with r = hypot(c1, c2), cos(phase) = c1/r, sin(phase) = -c2/r
//!   a = 1:  x_t = c1 t + c2, c1 = v0, c2 = x0.
class UnivariateFlow {
 public:
  enum class Regime { Hyperbolic, Trigonometric, Linear };

  static UnivariateFlow solve(double a, double x0, double v0);

  PhasePoint1D evaluate(double t) const;

  double a() const { return a_; }
  Regime regime() const { return regime_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  //! sqrt(a - 1) in the hyperbolic regime, sqrt(1 - a) in the trigonometric
  //! regime, 0 in the linear regime.
  double frequency() const { return freq_; }
  //! Polar amplitude r (trigonometric regime only).
  double polar_radius() const { return radius_; }
  //! Polar phase (trigonometric regime only).
  double polar_phase() const { return phase_; }

 private:
  double a_ = 0.0;
  Regime regime_ = Regime::Linear;
  double c1_ = 0.0, c2_ = 0.0;
  double freq_ = 0.0;
  double radius_ = 0.0, phase_ = 0.0;
};

//! Straight-line flow x_t = x0 + t v0, v_t = v0 (guide g = grad U cancels the
//! potential force).
struct LinearFlow {
  Eigen::VectorXd x0;
  Eigen::VectorXd v0;

  static LinearFlow solve(const Eigen::VectorXd& x0, const Eigen::VectorXd& v0);
  std::pair<Eigen::VectorXd, Eigen::VectorXd> evaluate(double t) const;
  int dim() const { return static_cast<int>(x0.size()); }
};

//! Componentwise-solvable flow for a Gaussian target with linear guide.
//!
//! In transformed coordinates y = P x the dynamics decouple:
//!   yddot_k = a_k y_k + offset_k,   offset = P Sigma^{-1} mu,
//! valid when Sigma^{-1} - A = -P^{-1} diag(a) P. Each coordinate is
//!   a_k < 0:  y_k(t) = C1_k cos(w_k t) + C2_k sin(w_k t) - offset_k / a_k,
//!             w_k = sqrt(-a_k), C1_k = y0_k + offset_k/a_k, C2_k = ydot0_k/w_k
//!   a_k > 0:  y_k(t) = C1_k e^{s_k t} + C2_k e^{-s_k t} - offset_k / a_k,
//!             s_k = sqrt(a_k),
//!             C1/2_k = (y0_k + offset_k/a_k +- ydot0_k/s_k) / 2.
//! a_k = 0 is rejected. State maps back through x = P^{-1} y, v = P^{-1} ydot.
class QuadraticFlow {
 public:
  //! Builds the flow for initial state (x0, v0). When guide_matrix is given
  //! it is validated against Sigma^{-1} - A = -P^{-1} diag(a) P to 1e-8
  //! entrywise; otherwise A is derived from that identity.
  static QuadraticFlow solve(const GaussianTarget& target,
                             const Eigen::MatrixXd& P,
                             const Eigen::VectorXd& a_diag,
                             const Eigen::VectorXd& x0,
                             const Eigen::VectorXd& v0,
                             const std::optional<Eigen::MatrixXd>& guide_matrix =
                                 std::nullopt);

  //! Convenience construction from the guide matrix alone: diagonalizes
  //! Sigma^{-1} - A (which must be symmetric) to recover P and a_diag.
  static QuadraticFlow from_guide_matrix(const GaussianTarget& target,
                                         const Eigen::MatrixXd& A,
                                         const Eigen::VectorXd& x0,
                                         const Eigen::VectorXd& v0);

  std::pair<Eigen::VectorXd, Eigen::VectorXd> evaluate(double t) const;
  //! Transformed-coordinate state (y, ydot) at time t.
  std::pair<Eigen::VectorXd, Eigen::VectorXd> evaluate_transformed(
      double t) const;

  int dim() const { return static_cast<int>(a_diag_.size()); }
  const Eigen::MatrixXd& P() const { return P_; }
  const Eigen::MatrixXd& P_inverse() const { return Pinv_; }
  const Eigen::VectorXd& a_diag() const { return a_diag_; }
  const Eigen::VectorXd& offset() const { return offset_; }
  //! Equilibrium shift o_k = offset_k / a_k.
  const Eigen::VectorXd& equilibrium_shift() const { return shift_; }
  const Eigen::VectorXd& C1() const { return C1_; }
  const Eigen::VectorXd& C2() const { return C2_; }
  const Eigen::MatrixXd& guide_matrix() const { return A_; }

 private:
  Eigen::MatrixXd P_, Pinv_, A_;
  Eigen::VectorXd a_diag_, offset_, shift_, C1_, C2_, sqrt_abs_a_;
};

}  // namespace bhs

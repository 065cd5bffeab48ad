#include "bhs/flows.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace bhs {

UnivariateFlow UnivariateFlow::solve(double a, double x0, double v0) {
  UnivariateFlow f;
  f.a_ = a;
  if (a > 1.0) {
    f.regime_ = Regime::Hyperbolic;
    f.freq_ = std::sqrt(a - 1.0);
    f.c1_ = x0 + v0 / f.freq_;
    f.c2_ = x0 - v0 / f.freq_;
  } else if (a < 1.0) {
    f.regime_ = Regime::Trigonometric;
    f.freq_ = std::sqrt(1.0 - a);
    f.c1_ = x0;
    f.c2_ = v0 / f.freq_;
    f.radius_ = std::hypot(f.c1_, f.c2_);
    f.phase_ = (f.radius_ > 0.0) ? std::atan2(-f.c2_, f.c1_) : 0.0;
  } else {
    f.regime_ = Regime::Linear;
    f.c1_ = v0;
    f.c2_ = x0;
  }
  return f;
}

PhasePoint1D UnivariateFlow::evaluate(double t) const {
  PhasePoint1D p;
  switch (regime_) {
    case Regime::Hyperbolic: {
      const double ep = std::exp(freq_ * t);
      const double em = 1.0 / ep;
      p.x = 0.5 * (c1_ * ep + c2_ * em);
      p.v = 0.5 * freq_ * (c1_ * ep - c2_ * em);
      break;
    }
    case Regime::Trigonometric: {
      const double ct = std::cos(freq_ * t);
      const double st = std::sin(freq_ * t);
      p.x = c1_ * ct + c2_ * st;
      p.v = freq_ * (-c1_ * st + c2_ * ct);
      break;
    }
    case Regime::Linear:
      p.x = c1_ * t + c2_;
      p.v = c1_;
      break;
  }
  return p;
}

LinearFlow LinearFlow::solve(const Eigen::VectorXd& x0,
                             const Eigen::VectorXd& v0) {
  if (x0.size() != v0.size())
    throw std::invalid_argument("LinearFlow: dim mismatch");
  return LinearFlow{x0, v0};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> LinearFlow::evaluate(
    double t) const {
  return {x0 + t * v0, v0};
}

QuadraticFlow QuadraticFlow::solve(
    const GaussianTarget& target, const Eigen::MatrixXd& P,
    const Eigen::VectorXd& a_diag, const Eigen::VectorXd& x0,
    const Eigen::VectorXd& v0,
    const std::optional<Eigen::MatrixXd>& guide_matrix) {
  const int d = target.dim();
  if (P.rows() != d || P.cols() != d)
    throw std::invalid_argument("QuadraticFlow: P shape mismatch");
  if (a_diag.size() != d || x0.size() != d || v0.size() != d)
    throw std::invalid_argument("QuadraticFlow: dim mismatch");
  for (int k = 0; k < d; ++k)
    if (a_diag[k] == 0.0)
      throw std::invalid_argument("QuadraticFlow: a_diag entries must be nonzero");

  Eigen::FullPivLU<Eigen::MatrixXd> lu(P);
  if (!lu.isInvertible())
    throw std::invalid_argument("QuadraticFlow: P is singular");

  QuadraticFlow f;
  f.P_ = P;
  f.Pinv_ = lu.inverse();
  f.a_diag_ = a_diag;
  f.offset_ = P * (target.precision * target.mean);
  f.shift_ = f.offset_.cwiseQuotient(a_diag);

  // A is pinned to the decoupling identity Sigma^{-1} - A = -P^{-1} diag(a) P.
  const Eigen::MatrixXd implied_A =
      target.precision + f.Pinv_ * a_diag.asDiagonal() * P;
  if (guide_matrix) {
    if (guide_matrix->rows() != d || guide_matrix->cols() != d)
      throw std::invalid_argument("QuadraticFlow: guide matrix shape mismatch");
    if (((*guide_matrix) - implied_A).cwiseAbs().maxCoeff() > 1e-8)
      throw std::invalid_argument(
          "QuadraticFlow: guide matrix inconsistent with P and a_diag");
    f.A_ = *guide_matrix;
  } else {
    f.A_ = implied_A;
  }

  const Eigen::VectorXd y0 = P * x0;
  const Eigen::VectorXd ydot0 = P * v0;
  f.C1_.resize(d);
  f.C2_.resize(d);
  f.sqrt_abs_a_.resize(d);
  for (int k = 0; k < d; ++k) {
    const double root = std::sqrt(std::abs(a_diag[k]));
    f.sqrt_abs_a_[k] = root;
    const double centered = y0[k] + f.shift_[k];
    if (a_diag[k] < 0.0) {
      f.C1_[k] = centered;
      f.C2_[k] = ydot0[k] / root;
    } else {
      f.C1_[k] = 0.5 * (centered + ydot0[k] / root);
      f.C2_[k] = 0.5 * (centered - ydot0[k] / root);
    }
  }
  return f;
}

QuadraticFlow QuadraticFlow::from_guide_matrix(const GaussianTarget& target,
                                               const Eigen::MatrixXd& A,
                                               const Eigen::VectorXd& x0,
                                               const Eigen::VectorXd& v0) {
  const int d = target.dim();
  if (A.rows() != d || A.cols() != d)
    throw std::invalid_argument("QuadraticFlow: guide matrix shape mismatch");
  const Eigen::MatrixXd S = target.precision - A;
  if ((S - S.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, S.cwiseAbs().maxCoeff()))
    throw std::invalid_argument(
        "QuadraticFlow: Sigma^{-1} - A must be symmetric for diagonalization");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("QuadraticFlow: eigendecomposition failed");
  // S = Q diag(lambda) Q^T with orthogonal Q, so P = Q^T gives
  // -P^{-1} diag(-lambda) P = Q diag(lambda) Q^T = S.
  const Eigen::VectorXd a_diag = -es.eigenvalues();
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  for (int k = 0; k < d; ++k)
    if (std::abs(a_diag[k]) <= 1e-12 * scale)
      throw std::invalid_argument(
          "QuadraticFlow: Sigma^{-1} - A has a (near-)zero eigenvalue");
  return solve(target, es.eigenvectors().transpose(), a_diag, x0, v0, A);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> QuadraticFlow::evaluate_transformed(
    double t) const {
  const int d = dim();
  Eigen::VectorXd y(d), ydot(d);
  for (int k = 0; k < d; ++k) {
    const double w = sqrt_abs_a_[k];
    if (a_diag_[k] < 0.0) {
      const double ct = std::cos(w * t);
      const double st = std::sin(w * t);
      y[k] = C1_[k] * ct + C2_[k] * st - shift_[k];
      ydot[k] = w * (-C1_[k] * st + C2_[k] * ct);
    } else {
      const double ep = std::exp(w * t);
      const double em = 1.0 / ep;
      y[k] = C1_[k] * ep + C2_[k] * em - shift_[k];
      ydot[k] = w * (C1_[k] * ep - C2_[k] * em);
    }
  }
  return {std::move(y), std::move(ydot)};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> QuadraticFlow::evaluate(
    double t) const {
  auto [y, ydot] = evaluate_transformed(t);
  return {Pinv_ * y, Pinv_ * ydot};
}

}  // namespace bhs

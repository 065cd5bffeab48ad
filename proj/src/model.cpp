#include "bhs/model.hpp"

#include <Eigen/Cholesky>

namespace bhs {

GaussianTarget GaussianTarget::make(const Eigen::VectorXd& mean,
                                    const Eigen::MatrixXd& covariance) {
  const int d = static_cast<int>(mean.size());
  if (covariance.rows() != d || covariance.cols() != d)
    throw std::invalid_argument("GaussianTarget: covariance shape mismatch");
  if (!covariance.isApprox(covariance.transpose(), 1e-12))
    throw std::invalid_argument("GaussianTarget: covariance not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("GaussianTarget: covariance not positive definite");
  GaussianTarget out;
  out.mean = mean;
  out.covariance = covariance;
  out.precision = llt.solve(Eigen::MatrixXd::Identity(d, d));
  // Symmetrize to kill the asymmetric roundoff the solve leaves behind.
  out.precision = 0.5 * (out.precision + out.precision.transpose()).eval();
  return out;
}

double GaussianTarget::potential(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd delta = x - mean;
  return 0.5 * delta.dot(precision * delta);
}

Eigen::VectorXd GaussianTarget::grad_potential(const Eigen::VectorXd& x) const {
  return precision * (x - mean);
}

TargetModel TargetModel::general(
    int dim, std::function<double(const Eigen::VectorXd&)> potential,
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad) {
  if (dim < 1) throw std::invalid_argument("TargetModel: dim must be >= 1");
  if (!potential || !grad)
    throw std::invalid_argument("TargetModel: null potential or gradient");
  TargetModel out;
  out.dim_ = dim;
  out.kind_ = Kind::GeneralSmooth;
  out.potential_ = std::move(potential);
  out.grad_ = std::move(grad);
  return out;
}

TargetModel TargetModel::gaussian(const Eigen::VectorXd& mean,
                                  const Eigen::MatrixXd& covariance) {
  return gaussian(GaussianTarget::make(mean, covariance));
}

TargetModel TargetModel::gaussian(GaussianTarget target) {
  TargetModel out;
  out.dim_ = target.dim();
  out.kind_ = Kind::Gaussian;
  out.gaussian_ = std::move(target);
  return out;
}

double TargetModel::potential(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw std::invalid_argument("potential: dim mismatch");
  return kind_ == Kind::Gaussian ? gaussian_->potential(x) : potential_(x);
}

Eigen::VectorXd TargetModel::grad_potential(const Eigen::VectorXd& x) const {
  if (x.size() != dim_)
    throw std::invalid_argument("grad_potential: dim mismatch");
  return kind_ == Kind::Gaussian ? gaussian_->grad_potential(x) : grad_(x);
}

const GaussianTarget& TargetModel::gaussian_target() const {
  if (!gaussian_)
    throw std::logic_error("TargetModel: not a Gaussian target");
  return *gaussian_;
}

GuideField GuideField::zero() {
  GuideField out;
  out.variant_ = Variant::Zero;
  return out;
}

GuideField GuideField::grad_potential() {
  GuideField out;
  out.variant_ = Variant::GradU;
  return out;
}

GuideField GuideField::linear(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("GuideField: A must be square");
  GuideField out;
  out.variant_ = Variant::Linear;
  out.A_ = A;
  return out;
}

GuideField GuideField::custom(
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> fn) {
  if (!fn) throw std::invalid_argument("GuideField: null callable");
  GuideField out;
  out.variant_ = Variant::Custom;
  out.fn_ = std::move(fn);
  return out;
}

const Eigen::MatrixXd& GuideField::matrix() const {
  if (variant_ != Variant::Linear)
    throw std::logic_error("GuideField: matrix() requires the linear variant");
  return A_;
}

Eigen::VectorXd GuideField::evaluate(const TargetModel& target,
                                     const Eigen::VectorXd& x) const {
  switch (variant_) {
    case Variant::Zero:
      return Eigen::VectorXd::Zero(x.size());
    case Variant::GradU:
      return target.grad_potential(x);
    case Variant::Linear:
      if (A_.rows() != x.size())
        throw std::invalid_argument("GuideField: dim mismatch");
      return A_ * x;
    case Variant::Custom:
      return fn_(x);
  }
  throw std::logic_error("GuideField: unreachable");
}

ConstraintSet ConstraintSet::none(int dim) {
  ConstraintSet out;
  out.F = Eigen::MatrixXd::Zero(dim, 0);
  out.h = Eigen::VectorXd::Zero(0);
  return out;
}

ConstraintSet ConstraintSet::make(const Eigen::MatrixXd& F,
                                  const Eigen::VectorXd& h) {
  if (F.cols() != h.size())
    throw std::invalid_argument("ConstraintSet: column/offset count mismatch");
  ConstraintSet out;
  out.F = F;
  out.h = h;
  return out;
}

Eigen::VectorXd ConstraintSet::values(const Eigen::VectorXd& x) const {
  if (x.size() != F.rows())
    throw std::invalid_argument("ConstraintSet: dim mismatch");
  return F.transpose() * x + h;
}

Eigen::VectorXd evaluate_guide(const GuideField& guide, const TargetModel& target,
                               const Eigen::VectorXd& x) {
  return guide.evaluate(target, x);
}

bool constraints_satisfied(const ConstraintSet& constraints,
                           const Eigen::VectorXd& x, double tol) {
  if (constraints.count() == 0) return true;
  return constraints.values(x).minCoeff() >= -tol;
}

Eigen::VectorXd draw_standard_normal_velocity(int dim, RngStream& rng) {
  if (dim < 1)
    throw std::invalid_argument("draw_standard_normal_velocity: dim < 1");
  return rng.normal_vector(dim);
}

}  // namespace bhs

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

#include <Eigen/Core>

#include "bhs/rng.hpp"

namespace bhs {

//! Feasibility slack: constraint values down to -kConstraintTol count as
//! satisfied, absorbing roundoff from flow evaluation at wall contacts.
inline constexpr double kConstraintTol = 1e-10;

//! Gaussian target N(mean, covariance). The precision matrix is factored once
//! at construction; covariance must be symmetric positive definite.
struct GaussianTarget {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  Eigen::MatrixXd precision;

  static GaussianTarget make(const Eigen::VectorXd& mean,
                             const Eigen::MatrixXd& covariance);

  int dim() const { return static_cast<int>(mean.size()); }
  double potential(const Eigen::VectorXd& x) const;
  Eigen::VectorXd grad_potential(const Eigen::VectorXd& x) const;
};

//! Differentiable potential U with gradient access. Gaussian targets carry
//! their moment structure; general targets supply callables.
class TargetModel {
 public:
  enum class Kind { GeneralSmooth, Gaussian };

  static TargetModel general(
      int dim, std::function<double(const Eigen::VectorXd&)> potential,
      std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad);
  static TargetModel gaussian(const Eigen::VectorXd& mean,
                              const Eigen::MatrixXd& covariance);
  static TargetModel gaussian(GaussianTarget target);

  int dim() const { return dim_; }
  Kind kind() const { return kind_; }
  double potential(const Eigen::VectorXd& x) const;
  Eigen::VectorXd grad_potential(const Eigen::VectorXd& x) const;

  bool is_gaussian() const { return kind_ == Kind::Gaussian; }
  //! Throws unless the target is Gaussian.
  const GaussianTarget& gaussian_target() const;

 private:
  TargetModel() = default;
  int dim_ = 0;
  Kind kind_ = Kind::GeneralSmooth;
  std::function<double(const Eigen::VectorXd&)> potential_;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad_;
  std::optional<GaussianTarget> gaussian_;
};

//! Velocity steering field g(x). Zero recovers randomized Hamiltonian
//! dynamics, GradU recovers straight-line bouncy dynamics, Linear uses
//! g(x) = A x, and Custom wraps an arbitrary callable.
class GuideField {
 public:
  enum class Variant { Zero, GradU, Linear, Custom };

  static GuideField zero();
  static GuideField grad_potential();
  static GuideField linear(const Eigen::MatrixXd& A);
  static GuideField custom(
      std::function<Eigen::VectorXd(const Eigen::VectorXd&)> fn);

  Variant variant() const { return variant_; }
  //! Guide matrix A; throws unless variant is Linear.
  const Eigen::MatrixXd& matrix() const;

  Eigen::VectorXd evaluate(const TargetModel& target,
                           const Eigen::VectorXd& x) const;

 private:
  GuideField() = default;
  Variant variant_ = Variant::Zero;
  Eigen::MatrixXd A_;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> fn_;
};

//! Position/velocity pair at a point in chain time.
struct State {
  Eigen::VectorXd position;
  Eigen::VectorXd velocity;
  double time = 0.0;
};

//! Closed polyhedral domain {x : F^T x + h >= 0}. F is d x m with one column
//! per constraint; m = 0 means unconstrained.
struct ConstraintSet {
  Eigen::MatrixXd F;
  Eigen::VectorXd h;

  static ConstraintSet none(int dim);
  static ConstraintSet make(const Eigen::MatrixXd& F, const Eigen::VectorXd& h);

  int dim() const { return static_cast<int>(F.rows()); }
  int count() const { return static_cast<int>(F.cols()); }
  //! All m constraint values F^T x + h.
  Eigen::VectorXd values(const Eigen::VectorXd& x) const;
};

//! The guide evaluated at x for the given target.
Eigen::VectorXd evaluate_guide(const GuideField& guide, const TargetModel& target,
                               const Eigen::VectorXd& x);

//! True when every constraint value is >= -tol.
bool constraints_satisfied(const ConstraintSet& constraints,
                           const Eigen::VectorXd& x,
                           double tol = kConstraintTol);

//! Fresh velocity draw v ~ N(0, I_dim).
Eigen::VectorXd draw_standard_normal_velocity(int dim, RngStream& rng);

}  // namespace bhs

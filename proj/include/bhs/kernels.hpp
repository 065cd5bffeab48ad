#pragma once

#include <Eigen/Core>

#include "bhs/rng.hpp"

namespace bhs {

//! Deterministic bounce: reflect v across the hyperplane orthogonal to the
//! guide vector gx,  v' = v - 2 (<v, gx>/||gx||^2) gx. Throws when
//! ||gx|| <= 1e-14 (reflection direction undefined).
Eigen::VectorXd bounce_deterministic(const Eigen::VectorXd& v,
                                     const Eigen::VectorXd& gx);

//! Stochastic bounce: flip the component of v parallel to gx and redraw the
//! orthogonal component from a standard normal on the hyperplane gx-perp,
//! v' = -v_parallel + xi_orth. In dimension 1 this is exactly -v. Same
//! ||gx|| threshold as the deterministic kernel.
Eigen::VectorXd bounce_stochastic(const Eigen::VectorXd& v,
                                  const Eigen::VectorXd& gx, RngStream& rng);

//! Specular wall reflection against a wall with inward normal column f:
//! the same Householder map as the deterministic bounce. Preserves speed.
Eigen::VectorXd wall_reflect(const Eigen::VectorXd& v,
                             const Eigen::VectorXd& wall_normal);

//! Partial refreshment v' = cos(phi) v + sin(phi) xi with xi ~ N(0, I).
//! phi must lie in (0, pi/2]; phi = pi/2 is a full redraw.
Eigen::VectorXd refresh_partial(const Eigen::VectorXd& v, double phi,
                                RngStream& rng);

//! Flip the sign of coordinate index of v.
Eigen::VectorXd coordinate_flip(const Eigen::VectorXd& v, int index);

}  // namespace bhs

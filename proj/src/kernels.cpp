#include "bhs/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bhs {

namespace {

constexpr double kGuideNormThreshold = 1e-14;

Eigen::VectorXd householder_reflect(const Eigen::VectorXd& v,
                                    const Eigen::VectorXd& direction,
                                    const char* who) {
  const double nsq = direction.squaredNorm();
  if (std::sqrt(nsq) <= kGuideNormThreshold)
    throw std::invalid_argument(std::string(who) +
                                ": reflection direction has near-zero norm");
  return v - (2.0 * v.dot(direction) / nsq) * direction;
}

}  // namespace

Eigen::VectorXd bounce_deterministic(const Eigen::VectorXd& v,
                                     const Eigen::VectorXd& gx) {
  if (v.size() != gx.size())
    throw std::invalid_argument("bounce_deterministic: dim mismatch");
  return householder_reflect(v, gx, "bounce_deterministic");
}

Eigen::VectorXd bounce_stochastic(const Eigen::VectorXd& v,
                                  const Eigen::VectorXd& gx, RngStream& rng) {
  const int d = static_cast<int>(v.size());
  if (gx.size() != d)
    throw std::invalid_argument("bounce_stochastic: dim mismatch");
  const double gnorm = gx.norm();
  if (gnorm <= kGuideNormThreshold)
    throw std::invalid_argument(
        "bounce_stochastic: reflection direction has near-zero norm");
  const Eigen::VectorXd w = gx / gnorm;
  const double parallel = v.dot(w);
  if (d == 1) {
    Eigen::VectorXd out(1);
    out[0] = -v[0];
    return out;
  }

  // Orthonormal basis of w-perp from the Householder map sending e1 -> w:
  // columns 2..d of H = I - 2 c c^T / ||c||^2, c = w - e1, are
  // orthonormal and orthogonal to w. A normal draw in those coordinates is
  // a standard normal on the hyperplane.
  Eigen::VectorXd y = Eigen::VectorXd::Zero(d);
  for (int i = 1; i < d; ++i) y[i] = rng.normal();
  Eigen::VectorXd xi;
  if (1.0 - w[0] < 1e-12) {
    xi = y;  // w is (numerically) e1 itself; the trivial basis works
  } else {
    Eigen::VectorXd c = w;
    c[0] -= 1.0;
    xi = y - (2.0 * c.dot(y) / c.squaredNorm()) * c;
  }
  // Remove roundoff leakage along w so the parallel component is an exact flip.
  xi -= xi.dot(w) * w;
  return -parallel * w + xi;
}

Eigen::VectorXd wall_reflect(const Eigen::VectorXd& v,
                             const Eigen::VectorXd& wall_normal) {
  if (v.size() != wall_normal.size())
    throw std::invalid_argument("wall_reflect: dim mismatch");
  return householder_reflect(v, wall_normal, "wall_reflect");
}

Eigen::VectorXd refresh_partial(const Eigen::VectorXd& v, double phi,
                                RngStream& rng) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(phi > 0.0 && phi <= half_pi))
    throw std::invalid_argument("refresh_partial: phi outside (0, pi/2]");
  const int d = static_cast<int>(v.size());
  // Full refresh is an exact redraw, not cos(pi/2) ~ 6e-17 times the old v.
  if (phi == half_pi) return rng.normal_vector(d);
  return std::cos(phi) * v + std::sin(phi) * rng.normal_vector(d);
}

Eigen::VectorXd coordinate_flip(const Eigen::VectorXd& v, int index) {
  if (index < 0 || index >= v.size())
    throw std::invalid_argument("coordinate_flip: index out of range");
  Eigen::VectorXd out = v;
  out[index] = -out[index];
  return out;
}

}  // namespace bhs

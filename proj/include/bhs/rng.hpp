#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Core>

namespace bhs {

//! Deterministic random stream.
//!
//! All variates are derived from raw mt19937_64 output with fixed arithmetic
//! (no std:: distribution objects), so a given seed reproduces the same
//! sequence regardless of standard-library implementation details. Replaying
//! a chain with the same seed is byte-identical.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  //! Uniform on the open interval (0, 1); endpoints are never returned.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  //! Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  //! Vector of independent standard normals.
  Eigen::VectorXd normal_vector(int dim) {
    Eigen::VectorXd out(dim);
    for (int i = 0; i < dim; ++i) out[i] = normal();
    return out;
  }

  //! Exponential with the given rate. Rate 0 yields +infinity without
  //! consuming a draw; negative rates are invalid.
  double exponential(double rate) {
    if (rate < 0.0) throw std::invalid_argument("exponential: negative rate");
    if (rate == 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(uniform()) / rate;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace bhs

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include <bhs/kernels.hpp>
#include <bhs/rng.hpp>

using namespace bhs;

TEST_CASE("deterministic bounce reflects across the guide hyperplane") {
  Eigen::VectorXd g(2);
  g << 1.0, 0.0;
  Eigen::VectorXd v(2);

  v << 2.0, 0.0;  // parallel component flips
  Eigen::VectorXd r = bounce_deterministic(v, g);
  CHECK(r[0] == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(r[1] == doctest::Approx(0.0).epsilon(1e-15));

  v << 0.0, 3.0;  // orthogonal component is untouched
  r = bounce_deterministic(v, g);
  CHECK(r[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r[1] == doctest::Approx(3.0).epsilon(1e-15));

  v << 1.0, 1.0;  // mixed case
  r = bounce_deterministic(v, g);
  CHECK(r[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("deterministic bounce is an isometric involution that reverses the "
          "guide component") {
  RngStream rng(7);
  for (int rep = 0; rep < 10000; ++rep) {
    const int d = 1 + rep % 6;
    const Eigen::VectorXd v = rng.normal_vector(d);
    Eigen::VectorXd g = rng.normal_vector(d);
    if (g.norm() < 1e-6) continue;
    const Eigen::VectorXd r = bounce_deterministic(v, g);
    CHECK(std::abs(r.norm() - v.norm()) < 1e-12 * std::max(1.0, v.norm()));
    CHECK(std::abs(r.dot(g) + v.dot(g)) < 1e-12 * std::max(1.0, v.norm() * g.norm()));
    const Eigen::VectorXd twice = bounce_deterministic(r, g);
    CHECK((twice - v).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, v.norm()));
  }
  Eigen::VectorXd v(2), tiny(2);
  v << 1.0, 2.0;
  tiny << 1e-15, 0.0;
  CHECK_THROWS_AS(bounce_deterministic(v, tiny), std::invalid_argument);
  CHECK_THROWS_AS(bounce_deterministic(v, Eigen::VectorXd::Zero(2)),
                  std::invalid_argument);
}

TEST_CASE("stochastic bounce flips the parallel part and redraws the rest") {
  RngStream rng(17);
  // dimension 1: no orthogonal complement, exactly -v
  Eigen::VectorXd v1(1), g1(1);
  v1 << 3.0;
  g1 << 1.0;
  const Eigen::VectorXd r1 = bounce_stochastic(v1, g1, rng);
  CHECK(r1[0] == -3.0);

  // the guide component is deterministically reversed in any dimension
  for (int rep = 0; rep < 2000; ++rep) {
    const int d = 2 + rep % 4;
    const Eigen::VectorXd v = rng.normal_vector(d);
    Eigen::VectorXd g = rng.normal_vector(d);
    if (g.norm() < 1e-6) continue;
    const Eigen::VectorXd r = bounce_stochastic(v, g, rng);
    CHECK(std::abs(r.dot(g) + v.dot(g)) <
          1e-12 * std::max(1.0, v.norm() * g.norm()));
  }

  // orthogonal part is a fresh standard normal: check marginal moments of a
  // coordinate orthogonal to the guide
  Eigen::VectorXd g(2), vfix(2);
  g << 0.0, 1.0;
  vfix << 0.7, -1.2;
  RngStream rng2(18);
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd out = bounce_stochastic(vfix, g, rng2);
    CHECK(out[1] == 1.2);  // parallel flip is exact here
    sum += out[0];
    sumsq += out[0] * out[0];
  }
  const double mean = sum / n;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(sumsq / n - mean * mean - 1.0) < 0.03);

  // redrawn component is uncorrelated with the incoming velocity
  RngStream rng3(19);
  double cross = 0.0;
  const int m = 20000;
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd vin = rng3.normal_vector(2);
    const Eigen::VectorXd out = bounce_stochastic(vin, g, rng3);
    cross += vin[0] * out[0];
  }
  CHECK(std::abs(cross / m) < 0.02);

  CHECK_THROWS_AS(bounce_stochastic(vfix, Eigen::VectorXd::Zero(2), rng3),
                  std::invalid_argument);
}

TEST_CASE("wall reflection is specular") {
  Eigen::VectorXd v(2), normal(2);
  v << 0.0, -1.0;
  normal << 0.0, 1.0;
  const Eigen::VectorXd r = wall_reflect(v, normal);
  CHECK(r[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-15));

  v << 1.0, -1.0;  // tangential component unchanged
  const Eigen::VectorXd r2 = wall_reflect(v, normal);
  CHECK(r2[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r2[1] == doctest::Approx(1.0).epsilon(1e-15));

  RngStream rng(23);
  for (int rep = 0; rep < 5000; ++rep) {
    const int d = 2 + rep % 3;
    const Eigen::VectorXd vin = rng.normal_vector(d);
    Eigen::VectorXd f = rng.normal_vector(d);
    if (f.norm() < 1e-6) continue;
    const Eigen::VectorXd out = wall_reflect(vin, f);
    CHECK(std::abs(out.norm() - vin.norm()) <
          1e-12 * std::max(1.0, vin.norm()));
    // the normal component reverses, so an outgoing state moves inward
    CHECK(std::abs(out.dot(f) + vin.dot(f)) <
          1e-12 * std::max(1.0, vin.norm() * f.norm()));
  }
  CHECK_THROWS_AS(wall_reflect(v, Eigen::VectorXd::Zero(2)),
                  std::invalid_argument);
}

TEST_CASE("partial refresh interpolates toward a fresh gaussian") {
  // phi = pi/2 ignores the incoming velocity entirely
  RngStream a(31), b(31);
  Eigen::VectorXd v(3);
  v << 100.0, -50.0, 25.0;
  const Eigen::VectorXd full = refresh_partial(v, std::acos(-1.0) / 2, a);
  const Eigen::VectorXd fresh = b.normal_vector(3);
  CHECK((full - fresh).cwiseAbs().maxCoeff() < 1e-12);

  // stationarity: standard normal in, standard normal out
  RngStream rng(37);
  const double phi = 0.7;
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd vin = rng.normal_vector(2);
    const Eigen::VectorXd out = refresh_partial(vin, phi, rng);
    sum += out[0];
    sumsq += out[0] * out[0];
  }
  const double mean = sum / n;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(sumsq / n - mean * mean - 1.0) < 0.03);

  // mixing weights are cos/sin of phi: regress output on input
  RngStream rng2(38);
  double cross = 0.0;
  const int m = 50000;
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd vin = rng2.normal_vector(1);
    const Eigen::VectorXd out = refresh_partial(vin, phi, rng2);
    cross += vin[0] * out[0];
  }
  CHECK(std::abs(cross / m - std::cos(phi)) < 0.02);

  CHECK_THROWS_AS(refresh_partial(v, 0.0, rng2), std::invalid_argument);
  CHECK_THROWS_AS(refresh_partial(v, -0.3, rng2), std::invalid_argument);
  CHECK_THROWS_AS(refresh_partial(v, 1.7, rng2), std::invalid_argument);
}

TEST_CASE("coordinate flip negates exactly one coordinate") {
  Eigen::VectorXd v(3);
  v << 1.0, 2.0, 3.0;
  const Eigen::VectorXd r = coordinate_flip(v, 1);
  CHECK(r[0] == 1.0);
  CHECK(r[1] == -2.0);
  CHECK(r[2] == 3.0);
  // involution
  CHECK((coordinate_flip(r, 1) - v).cwiseAbs().maxCoeff() == 0.0);
  // flips on distinct coordinates commute
  const Eigen::VectorXd ab = coordinate_flip(coordinate_flip(v, 0), 2);
  const Eigen::VectorXd ba = coordinate_flip(coordinate_flip(v, 2), 0);
  CHECK((ab - ba).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(coordinate_flip(v, -1), std::invalid_argument);
  CHECK_THROWS_AS(coordinate_flip(v, 3), std::invalid_argument);
}

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <bhs/analysis.hpp>
#include <bhs/event_times.hpp>
#include <bhs/flows.hpp>
#include <bhs/model.hpp>
#include <bhs/rng.hpp>

#include "oracles.hpp"

using namespace bhs;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd random_spd(int d, unsigned seed) {
  RngStream rng(seed);
  Eigen::MatrixXd B(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) B(i, j) = rng.normal();
  Eigen::MatrixXd S = B * B.transpose() + 0.5 * Eigen::MatrixXd::Identity(d, d);
  return 0.5 * (S + S.transpose());
}

double signed_mag(RngStream& rng) {
  const double mag = 0.5 + 1.5 * rng.uniform();
  return rng.uniform() < 0.5 ? -mag : mag;
}

}  // namespace

TEST_CASE("refresh times are exponential clocks") {
  RngStream rng(6);
  CHECK(sample_refresh_time(0.0, rng) == kInfiniteTime);
  CHECK_THROWS_AS(sample_refresh_time(-1.0, rng), std::invalid_argument);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += sample_refresh_time(2.0, rng);
  CHECK(std::abs(sum / n - 0.5) < 0.01);
  RngStream a(19), b(19);
  for (int i = 0; i < 50; ++i)
    CHECK(sample_refresh_time(1.3, a) == sample_refresh_time(1.3, b));
}

TEST_CASE("affine first arrival matches hand-solved hazards") {
  // constant rate 2, budget 1 -> 0.5
  CHECK(first_arrival_affine_rate(0.0, 2.0, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-13));
  // rate 2t, hazard t^2, budget 4 -> 2
  CHECK(first_arrival_affine_rate(2.0, 0.0, 4.0) ==
        doctest::Approx(2.0).epsilon(1e-13));
  // rate (t-1)_+, hazard (t-1)^2/2, budget 2 -> 3
  CHECK(first_arrival_affine_rate(1.0, -1.0, 2.0) ==
        doctest::Approx(3.0).epsilon(1e-13));
  // rate (1-t)_+, hazard t - t^2/2, budget 0.2 -> 1 - sqrt(0.6)
  CHECK(first_arrival_affine_rate(-1.0, 1.0, 0.2) ==
        doctest::Approx(1.0 - std::sqrt(0.6)).epsilon(1e-13));
  // decreasing rate with total hazard 0.5 < 0.6 -> never
  CHECK(first_arrival_affine_rate(-1.0, 1.0, 0.6) == kInfiniteTime);
  // identically zero or negative rate -> never
  CHECK(first_arrival_affine_rate(0.0, 0.0, 1.0) == kInfiniteTime);
  CHECK(first_arrival_affine_rate(0.0, -1.0, 1.0) == kInfiniteTime);
  CHECK_THROWS_AS(first_arrival_affine_rate(1.0, 1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(first_arrival_affine_rate(1.0, 1.0, -2.0),
                  std::invalid_argument);
}

TEST_CASE("sinusoidal first arrival matches hand-solved hazards") {
  // rate (sin t)_+: budget 1 inside the first arc
  CHECK(first_arrival_sin_rate(1.0, 1.0, 0.0, 1.0) ==
        doctest::Approx(kPi / 2).epsilon(1e-12));
  // one whole period contributes 2, remainder lands in the next arc
  CHECK(first_arrival_sin_rate(1.0, 1.0, 0.0, 2.5) ==
        doctest::Approx(2 * kPi + kPi / 3).epsilon(1e-12));
  // negative amplitude shifts the active arc by half a period
  CHECK(first_arrival_sin_rate(-1.0, 1.0, 0.0, 1.0) ==
        doctest::Approx(3 * kPi / 2).epsilon(1e-12));
  // phase pi/2, frequency 2: two half-arcs reach budget 1 at t = pi
  CHECK(first_arrival_sin_rate(1.0, 2.0, kPi / 2, 1.0) ==
        doctest::Approx(kPi).epsilon(1e-12));
  CHECK(first_arrival_sin_rate(0.0, 1.0, 0.3, 1.0) == kInfiniteTime);
  CHECK_THROWS_AS(first_arrival_sin_rate(1.0, 0.0, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(first_arrival_sin_rate(1.0, 1.0, 0.0, 0.0),
                  std::invalid_argument);

  // quadrature identity on general parameters
  struct Case {
    double M, w, theta0, budget;
  };
  for (const Case& c : {Case{0.7, 1.3, 2.1, 3.7}, Case{2.0, 0.6, -1.0, 5.0},
                        Case{1.5, 2.2, 4.0, 0.3}, Case{-0.9, 1.7, 0.4, 2.2}}) {
    const double tau = first_arrival_sin_rate(c.M, c.w, c.theta0, c.budget);
    REQUIRE(std::isfinite(tau));
    const auto rate = [&](double t) {
      return std::max(0.0, c.M * std::sin(c.theta0 + c.w * t));
    };
    double hazard = 0.0;
    const int chunks = static_cast<int>(std::ceil(tau * c.w / 0.25)) + 1;
    for (int i = 0; i < chunks; ++i)
      hazard += oracles::integrate(rate, tau * i / chunks,
                                   tau * (i + 1) / chunks, 1e-13 / chunks);
    CHECK(std::abs(hazard - c.budget) < 1e-8);
  }
}

TEST_CASE("univariate bounce times invert the cumulative hazard") {
  // Oscillator from (1, 0) with budget 1/2: the first hazard arc tops out at
  // exactly 1/2, so the inverse sits on a knife edge between the arc's end
  // t = pi / (2 sqrt(2)) and the next arc's start t = pi / sqrt(2). Either
  // side satisfies the hazard identity; assert that, not the location.
  UnivariateFlow osc = UnivariateFlow::solve(-1.0, 1.0, 0.0);
  const double u_half = std::exp(-0.5);
  const double tau = bounce_time_univariate(osc, u_half);
  CHECK(tau >= kPi / (2 * std::sqrt(2.0)) - 1e-6);
  CHECK(tau <= kPi / std::sqrt(2.0) + 1e-3);
  CHECK(std::abs(oracles::univariate_hazard(-1.0, 1.0, 0.0, tau) - 0.5) <
        1e-8);
  // An off-knife budget inverts to a unique interior point.
  const double tau_in = bounce_time_univariate(osc, std::exp(-0.25));
  CHECK(std::abs(oracles::univariate_hazard(-1.0, 1.0, 0.0, tau_in) - 0.25) <
        1e-8);
  CHECK(tau_in < kPi / (2 * std::sqrt(2.0)));

  // ballistic regime from (0, 1): rate t, so tau = sqrt(-2 log u)
  UnivariateFlow ball = UnivariateFlow::solve(1.0, 0.0, 1.0);
  CHECK(bounce_time_univariate(ball, 0.3) ==
        doctest::Approx(std::sqrt(-2.0 * std::log(0.3))).epsilon(1e-10));

  // u -> 1 collapses the bounce time toward zero where rate starts positive
  CHECK(bounce_time_univariate(ball, 1.0 - 1e-12) < 1e-5);
  CHECK(bounce_time_univariate(ball, 1.0 - 1e-12) > 0.0);

  // rate identically zero -> infinity
  CHECK(bounce_time_univariate(UnivariateFlow::solve(-1.0, 0.0, 0.0), 0.5) ==
        kInfiniteTime);
  CHECK(bounce_time_univariate(UnivariateFlow::solve(0.0, 1.0, 0.0), 0.5) ==
        kInfiniteTime);
  CHECK(bounce_time_univariate(UnivariateFlow::solve(1.0, 5.0, 0.0), 0.5) ==
        kInfiniteTime);
  // decaying hyperbolic branch never gains hazard
  CHECK(bounce_time_univariate(UnivariateFlow::solve(2.0, 1.0, -1.0), 0.5) ==
        kInfiniteTime);

  CHECK_THROWS_AS(bounce_time_univariate(osc, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bounce_time_univariate(osc, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bounce_time_univariate(osc, -0.2), std::invalid_argument);
}

TEST_CASE("univariate bounce times satisfy the quadrature identity") {
  RngStream rng(271);
  const double grid[] = {-3.0, -1.0, 0.5, 1.0, 2.0};
  int checked = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const double a = grid[rep % 5];
    const double x0 = signed_mag(rng);
    const double v0 = signed_mag(rng);
    const double u = rng.uniform();
    UnivariateFlow flow = UnivariateFlow::solve(a, x0, v0);
    const double tau = bounce_time_univariate(flow, u);
    REQUIRE(std::isfinite(tau));
    const double hazard = oracles::univariate_hazard(a, x0, v0, tau);
    CHECK(std::abs(hazard - (-std::log(u))) < 1e-8);
    ++checked;
  }
  CHECK(checked == 40);
}

TEST_CASE("quadratic bounce rate agrees with direct guide evaluation") {
  const int d = 3;
  GaussianTarget gt = GaussianTarget::make(
      (Eigen::VectorXd(d) << 0.2, -0.8, 1.4).finished(), random_spd(d, 51));
  const Eigen::MatrixXd A = gt.precision - random_spd(d, 52);
  RngStream rng(53);
  const Eigen::VectorXd x0 = gt.mean + rng.normal_vector(d);
  const Eigen::VectorXd v0 = rng.normal_vector(d);
  QuadraticFlow flow = QuadraticFlow::from_guide_matrix(gt, A, x0, v0);
  const RateFunction rate = quadratic_bounce_rate(flow);
  for (int i = 0; i <= 60; ++i) {
    const double t = 12.0 * i / 60.0;
    const auto [x, v] = flow.evaluate(t);
    const double direct = std::max(0.0, (A * x).dot(v));
    CHECK(std::abs(rate(t) - direct) < 1e-10 * std::max(1.0, direct));
  }
}

TEST_CASE("spectral norm matches singular value decomposition") {
  CHECK(spectral_norm(Eigen::MatrixXd::Zero(3, 3)) == 0.0);
  RngStream rng(61);
  for (int rep = 0; rep < 20; ++rep) {
    const int rows = 1 + static_cast<int>(rng.uniform() * 4);
    const int cols = 1 + static_cast<int>(rng.uniform() * 4);
    Eigen::MatrixXd M(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) M(i, j) = rng.normal();
    const double svd =
        Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues()[0];
    CHECK(spectral_norm(M) == doctest::Approx(svd).epsilon(1e-8));
  }
}

TEST_CASE("constant thinning bound is explicit on a hand-solved oscillator") {
  // Sigma = 2/3 so the precision is 3/2; guide 0.5 gives spring constant -1
  GaussianTarget gt = GaussianTarget::make(
      Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Constant(1, 1, 2.0 / 3.0));
  Eigen::VectorXd x0(1), v0(1);
  x0 << 1.0;
  v0 << 0.0;
  QuadraticFlow flow = QuadraticFlow::solve(
      gt, Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Constant(1, -1.0),
      x0, v0, Eigen::MatrixXd(Eigen::MatrixXd::Constant(1, 1, 0.5)));
  const ThinningBound bound = constant_thinning_bound(flow);
  CHECK(bound.lambda_max == doctest::Approx(0.5).epsilon(1e-12));
  // true rate (0.5 cos t * (-sin t))_+ peaks at 0.25, inside the bound
  const RateFunction rate = quadratic_bounce_rate(flow);
  double max_rate = 0.0;
  for (int i = 0; i < 5000; ++i)
    max_rate = std::max(max_rate, rate(2 * kPi * i / 5000.0));
  CHECK(max_rate == doctest::Approx(0.25).epsilon(1e-5));
  CHECK(max_rate <= bound.lambda_max);
  // precomputed-norm overload is the same quantity
  const double norm = spectral_norm(
      flow.P_inverse().transpose() * flow.guide_matrix().transpose() *
      flow.P_inverse());
  CHECK(constant_thinning_bound(flow, norm).lambda_max ==
        doctest::Approx(bound.lambda_max).epsilon(1e-12));
}

TEST_CASE("constant thinning bound dominates the rate on random flows") {
  RngStream rng(71);
  for (int rep = 0; rep < 25; ++rep) {
    const int d = 1 + rep % 3;
    GaussianTarget gt = GaussianTarget::make(
        rng.normal_vector(d), random_spd(d, 700 + rep));
    const Eigen::MatrixXd A = gt.precision - random_spd(d, 800 + rep);
    const Eigen::VectorXd x0 = gt.mean + rng.normal_vector(d);
    const Eigen::VectorXd v0 = rng.normal_vector(d);
    QuadraticFlow flow = QuadraticFlow::from_guide_matrix(gt, A, x0, v0);
    const double lambda = constant_thinning_bound(flow).lambda_max;
    const RateFunction rate = quadratic_bounce_rate(flow);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i)
      worst = std::max(worst, rate(20.0 * i / 9999.0));
    CHECK(worst <= lambda * (1.0 + 1e-12));
  }
}

TEST_CASE("thinning bound requires bounded trajectories and a zero guide "
          "gives no bounces") {
  GaussianTarget gt = GaussianTarget::make(Eigen::VectorXd::Zero(2),
                                           Eigen::MatrixXd::Identity(2, 2));
  Eigen::VectorXd x0(2), v0(2);
  x0 << 1.0, 0.0;
  v0 << 0.0, 1.0;
  QuadraticFlow zero_guide = QuadraticFlow::from_guide_matrix(
      gt, Eigen::MatrixXd::Zero(2, 2), x0, v0);
  CHECK(constant_thinning_bound(zero_guide).lambda_max == 0.0);
  RngStream rng(81);
  CHECK(sample_bounce_thinning(quadratic_bounce_rate(zero_guide),
                               constant_thinning_bound(zero_guide),
                               kInfiniteTime, rng) == kInfiniteTime);

  Eigen::VectorXd mixed(2);
  mixed << -1.0, 0.5;
  QuadraticFlow unbounded = QuadraticFlow::solve(
      gt, Eigen::MatrixXd::Identity(2, 2), mixed, x0, v0);
  CHECK_THROWS_AS(constant_thinning_bound(unbounded), std::invalid_argument);
}

TEST_CASE("thinning sampler draws and validates against its bound") {
  // accept-always constant rate reproduces the exponential clock
  RngStream rng(91);
  const RateFunction two = [](double) { return 2.0; };
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i)
    sum += sample_bounce_thinning(two, ThinningBound{2.0}, kInfiniteTime, rng);
  CHECK(std::abs(sum / n - 0.5) < 0.005);

  // rates above the bound are a caller bug, not a sample
  RngStream rng2(92);
  const RateFunction three = [](double) { return 3.0; };
  CHECK_THROWS_AS(
      sample_bounce_thinning(three, ThinningBound{2.0}, kInfiniteTime, rng2),
      std::runtime_error);
  const RateFunction negative = [](double) { return -0.1; };
  CHECK_THROWS_AS(
      sample_bounce_thinning(negative, ThinningBound{2.0}, kInfiniteTime, rng2),
      std::runtime_error);

  // zero bound or zero rate never fires
  CHECK(sample_bounce_thinning(two, ThinningBound{0.0}, kInfiniteTime, rng2) ==
        kInfiniteTime);
  const RateFunction zero = [](double) { return 0.0; };
  CHECK(sample_bounce_thinning(zero, ThinningBound{1.0}, 5.0, rng2) ==
        kInfiniteTime);

  CHECK_THROWS_AS(
      sample_bounce_thinning(two, ThinningBound{-1.0}, kInfiniteTime, rng2),
      std::invalid_argument);

  // deterministic given the stream
  RngStream a(93), b(93);
  const RateFunction wavy = [](double t) {
    return std::max(0.0, std::sin(t)) + 0.05;
  };
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_bounce_thinning(wavy, ThinningBound{1.05}, kInfiniteTime, a) ==
          sample_bounce_thinning(wavy, ThinningBound{1.05}, kInfiniteTime, b));
  }
}

TEST_CASE("thinning and exact inversion sample the same bounce law") {
  UnivariateFlow flow = UnivariateFlow::solve(-1.0, 1.0, 0.3);
  const double w = flow.frequency();
  const double r = flow.polar_radius();
  const ThinningBound bound{r * r * w / 2.0};
  const RateFunction rate = [&](double t) {
    const PhasePoint1D p = flow.evaluate(t);
    return std::max(0.0, -p.x * p.v);
  };
  RngStream rng_thin(401), rng_inv(402);
  // Null two-sample KS fluctuates near 0.83 sqrt(2/n); n = 1e5 puts the
  // 0.01 cut about 3x above the null median.
  const int n = 100000;
  std::vector<double> thinned, inverted;
  thinned.reserve(n);
  inverted.reserve(n);
  for (int i = 0; i < n; ++i) {
    thinned.push_back(
        sample_bounce_thinning(rate, bound, kInfiniteTime, rng_thin));
    inverted.push_back(bounce_time_univariate(flow, rng_inv.uniform()));
  }
  CHECK(ks_statistic_two_sample(thinned, inverted) < 0.01);
}

TEST_CASE("wall hit on the unit oscillator") {
  GaussianTarget gt = GaussianTarget::make(Eigen::VectorXd::Zero(1),
                                           Eigen::MatrixXd::Identity(1, 1));
  Eigen::VectorXd x0(1), v0(1);
  x0 << 1.0;
  v0 << 0.0;
  QuadraticFlow flow = QuadraticFlow::solve(
      gt, Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Constant(1, -1.0),
      x0, v0);
  ConstraintSet half = ConstraintSet::make(Eigen::MatrixXd::Identity(1, 1),
                                           Eigen::VectorXd::Zero(1));
  const WallHit hit = wall_hit_time(flow, half);
  CHECK(hit.tau == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(hit.wall_index == 0);
  REQUIRE(hit.amplitude.size() == 1);
  CHECK(hit.amplitude[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hit.level[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(hit.reachable == std::vector<int>{0});
  // the contact parametrization reproduces the constraint value everywhere
  for (int i = 0; i <= 40; ++i) {
    const double t = 2 * kPi * i / 40.0;
    const double param =
        hit.amplitude[0] * std::cos(1.0 * t + hit.phase[0]) + hit.level[0];
    CHECK(std::abs(param - half.values(flow.evaluate(t).first)[0]) < 1e-12);
  }

  // shifted wall is out of reach of the unit orbit
  ConstraintSet far = ConstraintSet::make(Eigen::MatrixXd::Identity(1, 1),
                                          Eigen::VectorXd::Constant(1, 2.0));
  const WallHit miss = wall_hit_time(flow, far);
  CHECK(miss.tau == kInfiniteTime);
  CHECK(miss.wall_index == -1);
  CHECK(miss.reachable.empty());

  // no walls at all
  const WallHit none = wall_hit_time(flow, ConstraintSet::none(1));
  CHECK(none.tau == kInfiniteTime);
  CHECK(none.wall_index == -1);
}

TEST_CASE("wall contact at the segment start is skipped") {
  GaussianTarget gt = GaussianTarget::make(Eigen::VectorXd::Zero(1),
                                           Eigen::MatrixXd::Identity(1, 1));
  Eigen::VectorXd x0(1), v0(1);
  x0 << 0.0;
  v0 << 1.0;  // x = sin t starts on the wall moving inward
  QuadraticFlow flow = QuadraticFlow::solve(
      gt, Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Constant(1, -1.0),
      x0, v0);
  ConstraintSet half = ConstraintSet::make(Eigen::MatrixXd::Identity(1, 1),
                                           Eigen::VectorXd::Zero(1));
  const WallHit hit = wall_hit_time(flow, half);
  CHECK(hit.tau == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(hit.wall_index == 0);
}

TEST_CASE("wall hit rejects invalid setups") {
  GaussianTarget gt = GaussianTarget::make(Eigen::VectorXd::Zero(2),
                                           Eigen::MatrixXd::Identity(2, 2));
  Eigen::VectorXd x0(2), v0(2);
  x0 << 1.0, 0.5;
  v0 << 0.0, 1.0;
  ConstraintSet octant = ConstraintSet::make(Eigen::MatrixXd::Identity(2, 2),
                                             Eigen::VectorXd::Zero(2));
  Eigen::VectorXd unequal(2);
  unequal << -1.0, -2.0;
  QuadraticFlow mixed = QuadraticFlow::solve(
      gt, Eigen::MatrixXd::Identity(2, 2), unequal, x0, v0);
  CHECK_THROWS_AS(wall_hit_time(mixed, octant), std::invalid_argument);

  QuadraticFlow ok = QuadraticFlow::solve(gt, Eigen::MatrixXd::Identity(2, 2),
                                          Eigen::VectorXd::Constant(2, -1.0),
                                          x0, v0);
  CHECK_THROWS_AS(wall_hit_time(ok, ConstraintSet::none(3)),
                  std::invalid_argument);
  Eigen::VectorXd outside(2);
  outside << -1.0, 0.5;
  QuadraticFlow bad_start = QuadraticFlow::solve(
      gt, Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Constant(2, -1.0),
      outside, v0);
  CHECK_THROWS_AS(wall_hit_time(bad_start, octant), std::invalid_argument);
}

TEST_CASE("wall hits on random feasible instances respect feasibility") {
  RngStream rng(111);
  int finite_hits = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2;
    GaussianTarget gt = GaussianTarget::make(
        rng.normal_vector(d), random_spd(d, 1100 + rep));
    Eigen::MatrixXd P(d, d);
    do {
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) P(i, j) = rng.normal();
    } while (std::abs(P.determinant()) < 0.2);
    const double a = -(0.3 + rng.uniform());
    const Eigen::VectorXd x0 = gt.mean + rng.normal_vector(d);
    const Eigen::VectorXd v0 = rng.normal_vector(d);

    const int m = 3;
    Eigen::MatrixXd F(d, m);
    Eigen::VectorXd h(m);
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd dir = rng.normal_vector(d);
      dir.normalize();
      F.col(j) = dir;
      h[j] = (0.05 + 0.75 * rng.uniform()) - dir.dot(x0);
    }
    ConstraintSet cs = ConstraintSet::make(F, h);
    REQUIRE(constraints_satisfied(cs, x0));

    QuadraticFlow flow = QuadraticFlow::solve(
        gt, P, Eigen::VectorXd::Constant(d, a), x0, v0);
    const WallHit hit = wall_hit_time(flow, cs);
    if (std::isfinite(hit.tau)) {
      ++finite_hits;
      CHECK(hit.tau > 1e-12);
      CHECK(hit.wall_index >= 0);
      CHECK(hit.wall_index < m);
      for (int i = 0; i < 1000; ++i) {
        const double t = hit.tau * i / 1000.0;
        CHECK(cs.values(flow.evaluate(t).first).minCoeff() >= -1e-8);
      }
      CHECK(std::abs(cs.values(flow.evaluate(hit.tau).first)[hit.wall_index]) <
            1e-8);
    } else {
      for (int i = 0; i <= 500; ++i) {
        const double t = 50.0 * i / 500.0;
        CHECK(cs.values(flow.evaluate(t).first).minCoeff() >= -1e-8);
      }
    }
  }
  CHECK(finite_hits > 0);
}

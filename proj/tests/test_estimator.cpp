#include "clustergame/errors.hpp"
#include "clustergame/estimator.hpp"
#include "clustergame/estimator_diagnostics.hpp"
#include "clustergame/games.hpp"
#include "clustergame/solver.hpp"

#include "doctest.h"

#include <cmath>

using namespace clustergame;

namespace {

ClusterSpec cournot_cluster1() {
  return ClusterSpec(std::vector<ActionInterval>(4, ActionInterval(0.0, 20.0)));
}

Vector ones(Eigen::Index n) { return Vector::Ones(n); }

GameSpec constant_game(double c, std::size_t n) {
  return GameSpec("constant", {ClusterSpec(std::vector<ActionInterval>(n, {-1.0, 1.0}))},
                  [c](std::size_t, std::size_t, const JointAction&) { return c; },
                  [n](std::size_t, std::size_t, const JointAction&) {
                    return Vector::Zero(static_cast<Eigen::Index>(n)).eval();
                  });
}

}  // namespace

TEST_CASE("sphere samples") {
  CounterRng rng(1, StreamTag::kTest, {1});
  CHECK_THROWS_AS(sample_unit_sphere(0, rng), UsageError);

  SUBCASE("unit norm") {
    for (std::size_t dim = 1; dim <= 8; ++dim)
      for (int k = 0; k < 1000; ++k)
        CHECK(std::abs(sample_unit_sphere(dim, rng).direction.norm() - 1.0) <= 1e-12);
  }
  SUBCASE("dim 1 is a fair sign") {
    int plus = 0;
    const int n = 10000;
    for (int k = 0; k < n; ++k) {
      const double z = sample_unit_sphere(1, rng).direction[0];
      CHECK(std::abs(z) == 1.0);
      plus += z > 0;
    }
    CHECK(std::abs(plus / double(n) - 0.5) <= 0.02);
  }
  SUBCASE("dim 4 is centered") {
    Vector sum = Vector::Zero(4);
    const int n = 100000;
    for (int k = 0; k < n; ++k) sum += sample_unit_sphere(4, rng).direction;
    CHECK((sum / n).cwiseAbs().maxCoeff() <= 0.02);
  }
}

TEST_CASE("query point at the center is p + sigma z") {
  const ClusterSpec c = cournot_cluster1();
  CounterRng rng(2, StreamTag::kTest, {1});
  const SphereSample z = sample_unit_sphere(4, rng);
  const Vector q = build_query_point(c.safety_center(), z, 0.7, c);
  CHECK((q - (c.safety_center() + 0.7 * z.direction)).norm() < 1e-14);
}

TEST_CASE("query point tends to x as sigma vanishes") {
  const ClusterSpec c = cournot_cluster1();
  CounterRng rng(3, StreamTag::kTest, {1});
  const double sigma = 1e-9;
  for (int k = 0; k < 1000; ++k) {
    // Inside the safety ball the offset is sigma |z - (x - p) / r| <= 2 sigma.
    const SphereSample u = sample_unit_sphere(4, rng);
    const Vector x = c.safety_center() + rng.uniform() * c.safety_radius() * u.direction;
    const Vector q = build_query_point(x, sample_unit_sphere(4, rng), sigma, c);
    CHECK((q - x).norm() <= 2 * sigma);
    // Anywhere in the box the same identity gives sigma (1 + |x - p| / r).
    Vector y(4);
    for (int m = 0; m < 4; ++m) y[m] = rng.uniform(0, 20);
    const Vector qy = build_query_point(y, sample_unit_sphere(4, rng), sigma, c);
    const double bound = sigma * (1 + (y - c.safety_center()).norm() / c.safety_radius());
    CHECK((qy - y).norm() <= bound * (1 + 1e-6));
  }
}

TEST_CASE("query point at the corner") {
  const ClusterSpec c = cournot_cluster1();
  CounterRng rng(4, StreamTag::kTest, {1});
  const Vector x = Vector::Constant(4, 20.0);
  for (int k = 0; k < 1000; ++k) {
    const SphereSample z = sample_unit_sphere(4, rng);
    const Vector q = build_query_point(x, z, 1.0, c);
    const Vector expected = 0.9 * x + z.direction + ones(4);
    CHECK((q - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(c.contains(q));
  }
}

TEST_CASE("query construction errors") {
  const ClusterSpec c = cournot_cluster1();
  CounterRng rng(5, StreamTag::kTest, {1});
  const SphereSample z = sample_unit_sphere(4, rng);
  CHECK_THROWS_AS(build_query_point(c.midpoint(), z, 10.0, c), ScheduleViolation);
  CHECK_THROWS_AS(build_query_point(c.midpoint(), z, 12.0, c), ScheduleViolation);
  CHECK_THROWS_AS(build_query_point(c.midpoint(), z, 0.0, c), ScheduleViolation);
  CHECK_THROWS_AS(build_query_point(Vector::Constant(4, 21.0), z, 1.0, c), UsageError);
}

TEST_CASE("random query constructions are feasible") {
  CounterRng rng(6, StreamTag::kTest, {1});
  std::size_t violations = 0;
  for (int k = 0; k < 100000; ++k) {
    const std::size_t n = 1 + rng.below(5);
    std::vector<ActionInterval> ivs;
    for (std::size_t j = 0; j < n; ++j) {
      const double lo = rng.uniform(-50, 50);
      ivs.emplace_back(lo, lo + rng.uniform(0.1, 30));
    }
    const ClusterSpec c(ivs);
    Vector x(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
      // Boundary points are included on purpose.
      const double u = rng.uniform();
      x[static_cast<Eigen::Index>(j)] =
          u < 0.1 ? ivs[j].lower : u > 0.9 ? ivs[j].upper : rng.uniform(ivs[j].lower, ivs[j].upper);
    }
    const double sigma = rng.uniform(1e-6, 0.999999) * c.safety_radius();
    const Vector q = build_query_point(x, sample_unit_sphere(n, rng), sigma, c);
    for (std::size_t j = 0; j < n; ++j) {
      const double v = q[static_cast<Eigen::Index>(j)];
      violations += !(v >= ivs[j].lower && v <= ivs[j].upper);
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("estimate arithmetic") {
  SphereSample z{(Vector(4) << 1, 0, 0, 0).finished()};
  const GradientEstimate g = estimate_gradient(2.0, z, 0.5, 4);
  CHECK(g.d == (Vector(4) << 16, 0, 0, 0).finished());
  CHECK(g.reconstructs());
  CHECK(estimate_gradient(0.0, z, 0.5, 4).d.isZero());
  CHECK_THROWS_AS(estimate_gradient(1.0, z, 0.0, 4), UsageError);
  CHECK_THROWS_AS(estimate_gradient(1.0, z, -1.0, 4), UsageError);
}

TEST_CASE("reconstruction identity is bit-exact") {
  CounterRng rng(7, StreamTag::kTest, {1});
  for (int k = 0; k < 10000; ++k) {
    const std::size_t n = 1 + rng.below(6);
    const GradientEstimate g = estimate_gradient(rng.uniform(-1e4, 1e4),
                                                 sample_unit_sphere(n, rng),
                                                 rng.uniform(1e-3, 5), n);
    CHECK(g.reconstructs());
    CHECK(g.d == (static_cast<double>(n) / g.sigma * g.oracle_value) * g.sample.direction);
  }
  GradientEstimate tampered = estimate_gradient(3.0, sample_unit_sphere(3, rng), 0.2, 3);
  tampered.d[1] = std::nextafter(tampered.d[1], 1e9);
  CHECK_FALSE(tampered.reconstructs());
}

TEST_CASE("constant cost: estimates average to zero") {
  CounterRng rng(8, StreamTag::kTest, {1});
  const double c = 3.0, sigma = 0.5;
  const std::size_t n = 4, samples = 1'000'000;
  Vector sum = Vector::Zero(4);
  for (std::size_t s = 0; s < samples; ++s)
    sum += estimate_gradient(c, sample_unit_sphere(n, rng), sigma, n).d;
  const Vector mean = sum / double(samples);
  // Each component of d has variance (n c / sigma)^2 / n.
  const double se = (n * c / sigma) / std::sqrt(double(n)) / std::sqrt(double(samples));
  CHECK(mean.norm() <= 3.0 * se * std::sqrt(double(n)));
}

TEST_CASE("constant cost: mean squared error has the closed form") {
  CounterRng rng(9, StreamTag::kTest, {1});
  const double c = 2.5, sigma = 0.3;
  const GameSpec g = constant_game(c, 3);
  const ErrorMoments m = estimator_error_moments(g, 0, 0, Vector::Zero(3), sigma, 20000, rng);
  const double expected = std::pow(3 * c / sigma, 2);
  CHECK(m.mean_sq_error_norm == doctest::Approx(expected).epsilon(0.01));
  CHECK(m.mean_error_norm == doctest::Approx(3 * c / sigma).epsilon(0.01));
}

TEST_CASE("quadratic cost: bias matches the shifted-gradient closed form") {
  // For J = |x - t|^2 / 2 the estimator is unbiased for the gradient at the
  // shrunk point p + (1 - sigma/r)(x - p), so the bias is -sigma (x - p) / r.
  QuadraticParams q;
  q.intervals = {std::vector<ActionInterval>(2, ActionInterval(-1.0, 1.0))};
  const Vector x = (Vector(2) << 0.6, -0.4).finished();
  q.targets = {x};
  const GameSpec g = make_quadratic_separable(q);
  CounterRng rng(10, StreamTag::kTest, {1});
  for (double sigma : {0.1, 0.05}) {
    const ErrorMoments m = estimator_error_moments(g, 0, 0, x, sigma, 400000, rng);
    CHECK(m.bias_norm == doctest::Approx(sigma * x.norm()).epsilon(0.05));
  }
}

TEST_CASE("cournot at the equilibrium: error variance scales like 1/sigma^2") {
  const GameSpec g = make_cournot(table1_cournot_params());
  const JointAction xs = solve_vi(g).point;
  CounterRng rng(11, StreamTag::kTest, {1});
  const ErrorMoments coarse = estimator_error_moments(g, 0, 0, xs, 0.1, 200000, rng);
  const ErrorMoments fine = estimator_error_moments(g, 0, 0, xs, 0.05, 200000, rng);
  const double ratio = fine.mean_sq_error_norm / coarse.mean_sq_error_norm;
  CHECK(ratio >= 2.5);
  CHECK(ratio <= 6.0);
}

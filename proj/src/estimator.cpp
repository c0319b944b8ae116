#include "clustergame/estimator.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "clustergame/errors.hpp"

namespace clustergame {

namespace {

double estimate_scale(double oracle_value, double sigma, std::size_t n_i) {
  return (static_cast<double>(n_i) / sigma) * oracle_value;
}

}  // namespace

bool GradientEstimate::reconstructs() const {
  if (sample.direction.size() != d.size()) return false;
  const Vector expected = estimate_scale(oracle_value, sigma, dimension) * sample.direction;
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    if (expected[k] != d[k]) return false;
  }
  return true;
}

SphereSample sample_unit_sphere(std::size_t dim, CounterRng& rng) {
  if (dim == 0) throw UsageError("sphere sample needs dimension >= 1");
  Vector v(static_cast<Eigen::Index>(dim));
  double norm = 0.0;
  do {
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = rng.normal();
    norm = v.norm();
  } while (!(norm > 0.0));
  return {v / norm};
}

Vector build_query_point(const Vector& x, const SphereSample& z, double sigma,
                         const ClusterSpec& cluster) {
  const auto n = static_cast<Eigen::Index>(cluster.agent_count());
  if (x.size() != n || z.direction.size() != n) {
    throw UsageError(fmt::format("query point: x has length {}, z has {}, cluster has {}",
                                 x.size(), z.direction.size(), n));
  }
  if (!cluster.contains(x)) throw UsageError("query point: base estimate is infeasible");
  const double r = cluster.safety_radius();
  if (!(sigma > 0.0)) {
    throw ScheduleViolation(fmt::format("query radius sigma = {} must be positive", sigma));
  }
  if (!(sigma / r < 1.0)) {
    throw ScheduleViolation(fmt::format(
        "query radius sigma = {} violates sigma / r < 1 for safety radius r = {}", sigma, r));
  }
  const double shrink = 1.0 - sigma / r;
  const Vector& p = cluster.safety_center();
  Vector q = p + shrink * (x - p) + sigma * z.direction;
  // The formula is feasible in exact arithmetic; only rounding can step past a
  // face, and only by a few ulps.
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& iv = cluster.interval(static_cast<std::size_t>(k));
    const double slack = 1e-12 * (1.0 + std::max(std::abs(iv.lower), std::abs(iv.upper)));
    if (q[k] < iv.lower - slack || q[k] > iv.upper + slack || !std::isfinite(q[k])) {
      throw FeasibilityError(fmt::format(
          "query component {} = {} escaped [{}, {}]", k, q[k], iv.lower, iv.upper));
    }
    q[k] = std::clamp(q[k], iv.lower, iv.upper);
  }
  return q;
}

GradientEstimate estimate_gradient(double oracle_value, const SphereSample& z, double sigma,
                                   std::size_t n_i) {
  if (!(sigma > 0.0)) {
    throw UsageError(fmt::format("gradient estimate needs sigma > 0, got {}", sigma));
  }
  if (static_cast<std::size_t>(z.direction.size()) != n_i) {
    throw UsageError("gradient estimate: direction length differs from n_i");
  }
  GradientEstimate g;
  g.sample = z;
  g.sigma = sigma;
  g.oracle_value = oracle_value;
  g.dimension = n_i;
  g.d = estimate_scale(oracle_value, sigma, n_i) * z.direction;
  return g;
}

}  // namespace clustergame

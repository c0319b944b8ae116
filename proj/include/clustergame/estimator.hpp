#pragma once

#include <cstddef>

#include "clustergame/action_set.hpp"
#include "clustergame/rng.hpp"

// One-point gradient estimation from a single scalar cost value. Only the
// action-set types are visible here, never the game or the oracle.
namespace clustergame {

struct SphereSample {
  Vector direction;  // unit norm
};

struct GradientEstimate {
  Vector d;
  SphereSample sample;
  double sigma = 0.0;
  double oracle_value = 0.0;
  std::size_t dimension = 0;

  // d == (n / sigma) * value * z, bit for bit.
  bool reconstructs() const;
};

// Normalized vector of independent standard normals.
SphereSample sample_unit_sphere(std::size_t dim, CounterRng& rng);

// x + sigma (z - (x - p) / r): a convex combination of x and a point of the
// safety ball, hence inside the box. Requires sigma < r (ScheduleViolation)
// and x inside the box (UsageError).
Vector build_query_point(const Vector& x, const SphereSample& z, double sigma,
                         const ClusterSpec& cluster);

// d = (n_i / sigma) * oracle_value * z.
GradientEstimate estimate_gradient(double oracle_value, const SphereSample& z, double sigma,
                                   std::size_t n_i);

}  // namespace clustergame

#include "clustergame/games.hpp"

#include <memory>

#include <fmt/format.h>

#include "clustergame/errors.hpp"

namespace clustergame {

CournotParams table1_cournot_params() {
  CournotParams p;
  p.price_constant = 250.0;
  p.clusters = {
      {{5, 10, 1, 0, 20}, {8, 11, 3, 0, 20}, {4, 9, 2, 0, 20}, {5, 12, 5, 0, 20}},
      {{3, 10, 3, 0, 10}, {7, 11, 2, 0, 10}, {9, 12, 3, 0, 10}, {2, 9, 1, 0, 10}},
  };
  return p;
}

double cournot_price(const CournotParams& params, const JointAction& x) {
  return params.price_constant - x.sum();
}

namespace {

std::vector<ClusterSpec> build_clusters(
    const std::vector<std::vector<ActionInterval>>& intervals,
    const std::vector<std::optional<SafetyBall>>& balls) {
  if (!balls.empty() && balls.size() != intervals.size()) {
    throw UsageError("one safety-ball override slot per cluster is required");
  }
  std::vector<ClusterSpec> clusters;
  clusters.reserve(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (!balls.empty() && balls[i]) {
      clusters.emplace_back(intervals[i], *balls[i]);
    } else {
      clusters.emplace_back(intervals[i]);
    }
  }
  return clusters;
}

}  // namespace

GameSpec make_cournot(const CournotParams& params,
                      const std::vector<std::optional<SafetyBall>>& balls) {
  if (params.clusters.empty()) throw UsageError("cournot: no companies");
  std::vector<std::vector<ActionInterval>> intervals;
  double capacity = 0.0;
  for (std::size_t i = 0; i < params.clusters.size(); ++i) {
    if (params.clusters[i].empty()) {
      throw UsageError(fmt::format("cournot: company {} has no factories", i));
    }
    auto& ivs = intervals.emplace_back();
    for (std::size_t j = 0; j < params.clusters[i].size(); ++j) {
      const auto& f = params.clusters[i][j];
      if (!(f.a > 0.0)) {
        throw UsageError(fmt::format(
            "cournot: factory ({}, {}) needs a > 0 for a convex cost, got {}", i, j, f.a));
      }
      ivs.emplace_back(f.lower, f.upper);
      capacity += f.upper;
    }
  }
  if (!(params.price_constant > capacity)) {
    throw UsageError(fmt::format(
        "cournot: price constant {} must exceed the total capacity {} so that P(x) > 0",
        params.price_constant, capacity));
  }

  auto shared = std::make_shared<const CournotParams>(params);
  std::vector<std::size_t> offsets;
  std::size_t off = 0;
  for (const auto& c : params.clusters) {
    offsets.push_back(off);
    off += c.size();
  }

  auto cost = [shared, offsets](std::size_t i, std::size_t j, const JointAction& x) {
    const auto& f = shared->clusters[i][j];
    const double q = x[static_cast<Eigen::Index>(offsets[i] + j)];
    const double price = shared->price_constant - x.sum();
    return f.a * q * q + f.b * q + f.c - q * price;
  };
  // d/dx_i^k of C_i^j(x_i^j) - x_i^j P(x): the own coordinate picks up the
  // marginal cost and the price, every coordinate picks up x_i^j via dP = -1.
  auto gradient = [shared, offsets](std::size_t i, std::size_t j, const JointAction& x) {
    const auto& cl = shared->clusters[i];
    const auto n = static_cast<Eigen::Index>(cl.size());
    const auto& f = cl[j];
    const double q = x[static_cast<Eigen::Index>(offsets[i] + j)];
    const double price = shared->price_constant - x.sum();
    Vector g = Vector::Constant(n, q);
    g[static_cast<Eigen::Index>(j)] += 2.0 * f.a * q + f.b - price;
    return g;
  };
  return GameSpec("cournot", build_clusters(intervals, balls), cost, gradient);
}

GameSpec make_quadratic_separable(const QuadraticParams& params,
                                  const std::vector<std::optional<SafetyBall>>& balls) {
  if (params.intervals.size() != params.targets.size()) {
    throw UsageError("quadratic: one target vector per cluster is required");
  }
  std::vector<std::size_t> offsets;
  std::size_t off = 0;
  for (std::size_t i = 0; i < params.intervals.size(); ++i) {
    if (static_cast<std::size_t>(params.targets[i].size()) != params.intervals[i].size()) {
      throw UsageError(fmt::format("quadratic: target of cluster {} has length {}, expected {}",
                                   i, params.targets[i].size(), params.intervals[i].size()));
    }
    offsets.push_back(off);
    off += params.intervals[i].size();
  }
  auto targets = std::make_shared<const std::vector<Vector>>(params.targets);
  auto cost = [targets, offsets](std::size_t i, std::size_t, const JointAction& x) {
    const auto& c = (*targets)[i];
    return 0.5 * (x.segment(static_cast<Eigen::Index>(offsets[i]), c.size()) - c)
                     .squaredNorm();
  };
  auto gradient = [targets, offsets](std::size_t i, std::size_t, const JointAction& x) {
    const auto& c = (*targets)[i];
    return Vector(x.segment(static_cast<Eigen::Index>(offsets[i]), c.size()) - c);
  };
  return GameSpec("quadratic-separable", build_clusters(params.intervals, balls), cost,
                  gradient);
}

GameSpec make_zero_game(std::vector<ClusterSpec> clusters) {
  std::vector<std::size_t> sizes;
  for (const auto& c : clusters) sizes.push_back(c.agent_count());
  auto cost = [](std::size_t, std::size_t, const JointAction&) { return 0.0; };
  auto gradient = [sizes](std::size_t i, std::size_t, const JointAction&) {
    return Vector(Vector::Zero(static_cast<Eigen::Index>(sizes[i])));
  };
  return GameSpec("zero", std::move(clusters), cost, gradient);
}

}  // namespace clustergame

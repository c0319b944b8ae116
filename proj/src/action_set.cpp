#include "clustergame/action_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "clustergame/errors.hpp"

namespace clustergame {

ActionInterval::ActionInterval(double lo, double hi) : lower(lo), upper(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw UsageError(fmt::format(
        "degenerate action interval [{}, {}]: lower must be < upper", lo, hi));
  }
}

SafetyBall default_safety_ball(const std::vector<ActionInterval>& intervals) {
  if (intervals.empty()) throw UsageError("cluster must have at least one agent");
  SafetyBall ball;
  ball.center.resize(static_cast<Eigen::Index>(intervals.size()));
  ball.radius = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < intervals.size(); ++j) {
    const auto& iv = intervals[j];
    if (!(iv.lower < iv.upper)) {
      throw UsageError(fmt::format("degenerate interval for agent {}", j));
    }
    // Slack measured from the rounded midpoint, so containment holds exactly.
    const double c = iv.midpoint();
    ball.center[static_cast<Eigen::Index>(j)] = c;
    ball.radius = std::min({ball.radius, c - iv.lower, iv.upper - c});
  }
  return ball;
}

ClusterSpec::ClusterSpec(std::vector<ActionInterval> intervals)
    : ClusterSpec(intervals, default_safety_ball(intervals)) {}

ClusterSpec::ClusterSpec(std::vector<ActionInterval> intervals, SafetyBall ball)
    : intervals_(std::move(intervals)), ball_(std::move(ball)) {
  if (intervals_.empty()) throw UsageError("cluster must have at least one agent");
  for (const auto& iv : intervals_) {
    if (!(iv.lower < iv.upper)) throw UsageError("degenerate action interval");
  }
  if (static_cast<std::size_t>(ball_.center.size()) != intervals_.size()) {
    throw UsageError(fmt::format("safety center has length {}, expected {}",
                                 ball_.center.size(), intervals_.size()));
  }
  if (!(ball_.radius > 0.0) || !std::isfinite(ball_.radius)) {
    throw UsageError("safety radius must be positive and finite");
  }
  // A ball inside a box: radius bounded by the distance to every face.
  for (std::size_t j = 0; j < intervals_.size(); ++j) {
    const double c = ball_.center[static_cast<Eigen::Index>(j)];
    const double slack =
        std::min(c - intervals_[j].lower, intervals_[j].upper - c);
    if (ball_.radius > slack) {
      throw UsageError(fmt::format(
          "safety ball (radius {}) leaves the box along agent {} (slack {})",
          ball_.radius, j, slack));
    }
  }
}

Vector ClusterSpec::lower() const {
  Vector v(static_cast<Eigen::Index>(intervals_.size()));
  for (std::size_t j = 0; j < intervals_.size(); ++j)
    v[static_cast<Eigen::Index>(j)] = intervals_[j].lower;
  return v;
}

Vector ClusterSpec::upper() const {
  Vector v(static_cast<Eigen::Index>(intervals_.size()));
  for (std::size_t j = 0; j < intervals_.size(); ++j)
    v[static_cast<Eigen::Index>(j)] = intervals_[j].upper;
  return v;
}

Vector ClusterSpec::midpoint() const {
  Vector v(static_cast<Eigen::Index>(intervals_.size()));
  for (std::size_t j = 0; j < intervals_.size(); ++j)
    v[static_cast<Eigen::Index>(j)] = intervals_[j].midpoint();
  return v;
}

bool ClusterSpec::contains(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != intervals_.size()) return false;
  for (std::size_t j = 0; j < intervals_.size(); ++j) {
    if (!intervals_[j].contains(v[static_cast<Eigen::Index>(j)])) return false;
  }
  return true;
}

Vector project_cluster(const ClusterSpec& cluster, const Vector& v) {
  if (static_cast<std::size_t>(v.size()) != cluster.agent_count()) {
    throw UsageError(fmt::format("projection: vector length {} but cluster has {} agents",
                                 v.size(), cluster.agent_count()));
  }
  Vector out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const auto& iv = cluster.interval(static_cast<std::size_t>(j));
    out[j] = std::clamp(v[j], iv.lower, iv.upper);
  }
  return out;
}

}  // namespace clustergame

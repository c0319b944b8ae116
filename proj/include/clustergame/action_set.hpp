#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace clustergame {

using Vector = Eigen::VectorXd;

// Feasible action interval of a single agent. Always nondegenerate.
struct ActionInterval {
  double lower = 0.0;
  double upper = 1.0;

  ActionInterval() = default;
  ActionInterval(double lo, double hi);  // throws UsageError unless lo < hi

  double width() const { return upper - lower; }
  double midpoint() const { return 0.5 * (lower + upper); }
  bool contains(double v) const { return v >= lower && v <= upper; }
};

struct SafetyBall {
  Vector center;
  double radius = 0.0;
};

// Box midpoint with the largest radius that keeps the ball inside the box.
SafetyBall default_safety_ball(const std::vector<ActionInterval>& intervals);

// Box action set of one cluster together with its safety ball. The ball is
// checked for containment on construction.
class ClusterSpec {
 public:
  explicit ClusterSpec(std::vector<ActionInterval> intervals);
  ClusterSpec(std::vector<ActionInterval> intervals, SafetyBall ball);

  std::size_t agent_count() const { return intervals_.size(); }
  const std::vector<ActionInterval>& intervals() const { return intervals_; }
  const ActionInterval& interval(std::size_t j) const { return intervals_.at(j); }
  const Vector& safety_center() const { return ball_.center; }
  double safety_radius() const { return ball_.radius; }
  const SafetyBall& safety_ball() const { return ball_; }

  Vector lower() const;
  Vector upper() const;
  Vector midpoint() const;

  bool contains(const Vector& v) const;

 private:
  std::vector<ActionInterval> intervals_;
  SafetyBall ball_;
};

// Euclidean projection onto the cluster box (componentwise clamp).
Vector project_cluster(const ClusterSpec& cluster, const Vector& v);

}  // namespace clustergame

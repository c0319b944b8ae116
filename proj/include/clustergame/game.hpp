#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "clustergame/action_set.hpp"

namespace clustergame {

// Joint action of every agent, cluster blocks concatenated in cluster order.
using JointAction = Vector;

// J_i^j(x): local cost of agent j in cluster i at the joint action x.
using LocalCostFn =
    std::function<double(std::size_t cluster, std::size_t agent, const JointAction& x)>;

// Partial gradient of J_i^j with respect to the cluster-i block, length n_i.
using LocalGradientFn =
    std::function<Vector(std::size_t cluster, std::size_t agent, const JointAction& x)>;

enum class GradientFallback { kFiniteDifference, kNone };

// An n-cluster game: box action sets per cluster and a local cost evaluator
// for every agent. Immutable once built, so it can be shared across runs.
class GameSpec {
 public:
  GameSpec(std::string name, std::vector<ClusterSpec> clusters, LocalCostFn cost,
           LocalGradientFn gradient = {},
           GradientFallback fallback = GradientFallback::kFiniteDifference);

  const std::string& name() const { return name_; }
  std::size_t cluster_count() const { return clusters_.size(); }
  const ClusterSpec& cluster(std::size_t i) const;
  const std::vector<ClusterSpec>& clusters() const { return clusters_; }
  std::size_t agent_count(std::size_t i) const { return cluster(i).agent_count(); }

  // Total dimension, sum of the n_i.
  std::size_t dimension() const { return dimension_; }
  std::size_t offset(std::size_t i) const { return offsets_.at(i); }

  Vector block(const JointAction& x, std::size_t i) const;
  void set_block(JointAction& x, std::size_t i, const Vector& xi) const;

  bool has_analytic_gradient() const { return static_cast<bool>(gradient_); }
  GradientFallback fallback() const { return fallback_; }

  bool contains(const JointAction& x) const;
  // Throws FeasibilityError naming the first offending component.
  void require_feasible(const JointAction& x) const;

  JointAction lower() const;
  JointAction upper() const;
  JointAction midpoint() const;

  // Raw evaluator access without feasibility checks; used by finite
  // differences near the box boundary.
  double raw_local_cost(std::size_t i, std::size_t j, const JointAction& x) const {
    return cost_(i, j, x);
  }
  const LocalGradientFn& raw_local_gradient() const { return gradient_; }

 private:
  void require_index(std::size_t i, std::size_t j) const;
  friend double eval_local_cost(const GameSpec&, std::size_t, std::size_t,
                                const JointAction&);

  std::string name_;
  std::vector<ClusterSpec> clusters_;
  std::vector<std::size_t> offsets_;
  std::size_t dimension_ = 0;
  LocalCostFn cost_;
  LocalGradientFn gradient_;
  GradientFallback fallback_;
};

double eval_local_cost(const GameSpec& spec, std::size_t i, std::size_t j,
                       const JointAction& x);

// J_i = (1/n_i) sum_j J_i^j.
double eval_cluster_cost(const GameSpec& spec, std::size_t i, const JointAction& x);

// grad_i J_i^j at x (analytic when available, else central differences).
Vector local_gradient(const GameSpec& spec, std::size_t i, std::size_t j,
                      const JointAction& x);

// grad_i J_i at x, the cluster-i block of the game mapping.
Vector exact_cluster_gradient(const GameSpec& spec, std::size_t i, const JointAction& x);

// F(x): stacked cluster gradients.
Vector game_mapping(const GameSpec& spec, const JointAction& x);

JointAction project_joint(const GameSpec& spec, const JointAction& x);

inline constexpr double kFiniteDifferenceStep = 1e-5;

}  // namespace clustergame

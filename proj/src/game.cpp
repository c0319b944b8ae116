#include "clustergame/game.hpp"

#include <cmath>

#include <fmt/format.h>

#include "clustergame/errors.hpp"

namespace clustergame {

GameSpec::GameSpec(std::string name, std::vector<ClusterSpec> clusters, LocalCostFn cost,
                   LocalGradientFn gradient, GradientFallback fallback)
    : name_(std::move(name)),
      clusters_(std::move(clusters)),
      cost_(std::move(cost)),
      gradient_(std::move(gradient)),
      fallback_(fallback) {
  if (clusters_.empty()) throw UsageError("a game needs at least one cluster");
  if (!cost_) throw UsageError("a game needs a local cost evaluator");
  offsets_.reserve(clusters_.size());
  for (const auto& c : clusters_) {
    offsets_.push_back(dimension_);
    dimension_ += c.agent_count();
  }
}

const ClusterSpec& GameSpec::cluster(std::size_t i) const {
  if (i >= clusters_.size()) {
    throw UsageError(fmt::format("cluster index {} out of range (n = {})", i,
                                 clusters_.size()));
  }
  return clusters_[i];
}

void GameSpec::require_index(std::size_t i, std::size_t j) const {
  if (j >= cluster(i).agent_count()) {
    throw UsageError(fmt::format("agent index {} out of range for cluster {} (n_i = {})",
                                 j, i, clusters_[i].agent_count()));
  }
}

Vector GameSpec::block(const JointAction& x, std::size_t i) const {
  const auto& c = cluster(i);
  if (static_cast<std::size_t>(x.size()) != dimension_) {
    throw UsageError(fmt::format("joint action has length {}, expected {}", x.size(),
                                 dimension_));
  }
  return x.segment(static_cast<Eigen::Index>(offsets_[i]),
                   static_cast<Eigen::Index>(c.agent_count()));
}

void GameSpec::set_block(JointAction& x, std::size_t i, const Vector& xi) const {
  const auto& c = cluster(i);
  if (static_cast<std::size_t>(xi.size()) != c.agent_count() ||
      static_cast<std::size_t>(x.size()) != dimension_) {
    throw UsageError("set_block: dimension mismatch");
  }
  x.segment(static_cast<Eigen::Index>(offsets_[i]), xi.size()) = xi;
}

bool GameSpec::contains(const JointAction& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension_) return false;
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    if (!clusters_[i].contains(block(x, i))) return false;
  }
  return true;
}

void GameSpec::require_feasible(const JointAction& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension_) {
    throw UsageError(fmt::format("joint action has length {}, expected {}", x.size(),
                                 dimension_));
  }
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    for (std::size_t j = 0; j < clusters_[i].agent_count(); ++j) {
      const double v = x[static_cast<Eigen::Index>(offsets_[i] + j)];
      const auto& iv = clusters_[i].interval(j);
      if (!iv.contains(v)) {
        throw FeasibilityError(fmt::format(
            "component ({}, {}) = {} outside [{}, {}]", i, j, v, iv.lower, iv.upper));
      }
    }
  }
}

JointAction GameSpec::lower() const {
  JointAction x(static_cast<Eigen::Index>(dimension_));
  for (std::size_t i = 0; i < clusters_.size(); ++i) set_block(x, i, clusters_[i].lower());
  return x;
}

JointAction GameSpec::upper() const {
  JointAction x(static_cast<Eigen::Index>(dimension_));
  for (std::size_t i = 0; i < clusters_.size(); ++i) set_block(x, i, clusters_[i].upper());
  return x;
}

JointAction GameSpec::midpoint() const {
  JointAction x(static_cast<Eigen::Index>(dimension_));
  for (std::size_t i = 0; i < clusters_.size(); ++i)
    set_block(x, i, clusters_[i].midpoint());
  return x;
}

double eval_local_cost(const GameSpec& spec, std::size_t i, std::size_t j,
                       const JointAction& x) {
  spec.require_index(i, j);
  spec.require_feasible(x);
  const double v = spec.cost_(i, j, x);
  if (!std::isfinite(v)) {
    throw NumericError(fmt::format("local cost ({}, {}) is not finite", i, j));
  }
  return v;
}

double eval_cluster_cost(const GameSpec& spec, std::size_t i, const JointAction& x) {
  const std::size_t n = spec.agent_count(i);
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) sum += eval_local_cost(spec, i, j, x);
  return sum / static_cast<double>(n);
}

namespace {

Vector central_difference(const GameSpec& spec, std::size_t i, std::size_t j,
                          const JointAction& x) {
  const std::size_t n = spec.agent_count(i);
  const auto off = static_cast<Eigen::Index>(spec.offset(i));
  Vector g(static_cast<Eigen::Index>(n));
  JointAction probe = x;
  for (std::size_t k = 0; k < n; ++k) {
    const auto idx = off + static_cast<Eigen::Index>(k);
    const double h = kFiniteDifferenceStep * std::max(1.0, std::abs(x[idx]));
    probe[idx] = x[idx] + h;
    const double up = spec.raw_local_cost(i, j, probe);
    probe[idx] = x[idx] - h;
    const double down = spec.raw_local_cost(i, j, probe);
    probe[idx] = x[idx];
    g[static_cast<Eigen::Index>(k)] = (up - down) / (2.0 * h);
  }
  return g;
}

}  // namespace

Vector local_gradient(const GameSpec& spec, std::size_t i, std::size_t j,
                      const JointAction& x) {
  if (j >= spec.agent_count(i)) throw UsageError("agent index out of range");
  spec.require_feasible(x);
  if (spec.has_analytic_gradient()) {
    Vector g = spec.raw_local_gradient()(i, j, x);
    if (static_cast<std::size_t>(g.size()) != spec.agent_count(i)) {
      throw UsageError("analytic gradient returned a vector of the wrong length");
    }
    return g;
  }
  if (spec.fallback() == GradientFallback::kNone) {
    throw UnsupportedOperation(fmt::format(
        "game '{}' has no analytic gradient and finite differences are disabled",
        spec.name()));
  }
  return central_difference(spec, i, j, x);
}

Vector exact_cluster_gradient(const GameSpec& spec, std::size_t i, const JointAction& x) {
  const std::size_t n = spec.agent_count(i);
  Vector g = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) g += local_gradient(spec, i, j, x);
  return g / static_cast<double>(n);
}

Vector game_mapping(const GameSpec& spec, const JointAction& x) {
  Vector f(static_cast<Eigen::Index>(spec.dimension()));
  for (std::size_t i = 0; i < spec.cluster_count(); ++i) {
    f.segment(static_cast<Eigen::Index>(spec.offset(i)),
              static_cast<Eigen::Index>(spec.agent_count(i))) =
        exact_cluster_gradient(spec, i, x);
  }
  return f;
}

JointAction project_joint(const GameSpec& spec, const JointAction& x) {
  if (static_cast<std::size_t>(x.size()) != spec.dimension()) {
    throw UsageError("projection: joint action has the wrong length");
  }
  JointAction out(x.size());
  for (std::size_t i = 0; i < spec.cluster_count(); ++i) {
    spec.set_block(out, i, project_cluster(spec.cluster(i), spec.block(x, i)));
  }
  return out;
}

}  // namespace clustergame

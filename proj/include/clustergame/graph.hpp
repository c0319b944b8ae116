#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "clustergame/action_set.hpp"
#include "clustergame/errors.hpp"

namespace clustergame {

// Undirected simple graph on nodes 0..n-1. Edges are stored as ordered pairs
// (low, high) so symmetry holds by construction.
class UndirectedGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  explicit UndirectedGraph(std::size_t node_count);
  UndirectedGraph(std::size_t node_count, const std::vector<Edge>& edges);

  static UndirectedGraph complete(std::size_t n);
  static UndirectedGraph ring(std::size_t n);
  static UndirectedGraph path(std::size_t n);
  static UndirectedGraph star(std::size_t n);
  // "complete", "ring", "path" or "star"; throws UsageError otherwise.
  static UndirectedGraph preset(const std::string& name, std::size_t n);
  static bool is_preset(const std::string& name);

  void add_edge(std::size_t k, std::size_t j);
  bool has_edge(std::size_t k, std::size_t j) const;

  std::size_t node_count() const { return node_count_; }
  const std::set<Edge>& edges() const { return edges_; }
  std::size_t degree(std::size_t k) const { return adjacency_.at(k).size(); }
  const std::vector<std::size_t>& neighbors(std::size_t k) const { return adjacency_.at(k); }

  bool is_connected() const;

 private:
  std::size_t node_count_;
  std::set<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

// Row k holds the weights agent k applies to its neighbors' estimates.
struct MixingMatrix {
  Eigen::MatrixXd weights;

  std::size_t size() const { return static_cast<std::size_t>(weights.rows()); }
};

// Metropolis-Hastings weights: 1 / (1 + max(deg k, deg j)) on every edge,
// the residual on the diagonal. Throws ValidationError on a disconnected graph.
MixingMatrix build_metropolis_weights(const UndirectedGraph& g);

// Output j is sum_l w_jl states[l]; all states must share one length.
std::vector<Vector> mix(const MixingMatrix& w, const std::vector<Vector>& states);

inline constexpr double kStochasticTolerance = 1e-12;

// Reports nonnegativity, sparsity-vs-edges, row/column sums, and symmetry
// violations. Never throws.
ValidationReport validate_mixing(const MixingMatrix& w, const UndirectedGraph& g);

}  // namespace clustergame

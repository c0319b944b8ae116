#include "clustergame/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <fmt/format.h>

namespace clustergame {

UndirectedGraph::UndirectedGraph(std::size_t node_count)
    : node_count_(node_count), adjacency_(node_count) {
  if (node_count == 0) throw UsageError("graph needs at least one node");
}

UndirectedGraph::UndirectedGraph(std::size_t node_count, const std::vector<Edge>& edges)
    : UndirectedGraph(node_count) {
  for (const auto& [k, j] : edges) add_edge(k, j);
}

UndirectedGraph UndirectedGraph::complete(std::size_t n) {
  UndirectedGraph g(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = k + 1; j < n; ++j) g.add_edge(k, j);
  return g;
}

UndirectedGraph UndirectedGraph::ring(std::size_t n) {
  UndirectedGraph g(n);
  if (n == 2) g.add_edge(0, 1);
  if (n >= 3)
    for (std::size_t k = 0; k < n; ++k) g.add_edge(k, (k + 1) % n);
  return g;
}

UndirectedGraph UndirectedGraph::path(std::size_t n) {
  UndirectedGraph g(n);
  for (std::size_t k = 0; k + 1 < n; ++k) g.add_edge(k, k + 1);
  return g;
}

UndirectedGraph UndirectedGraph::star(std::size_t n) {
  UndirectedGraph g(n);
  for (std::size_t k = 1; k < n; ++k) g.add_edge(0, k);
  return g;
}

bool UndirectedGraph::is_preset(const std::string& name) {
  return name == "complete" || name == "ring" || name == "path" || name == "star";
}

UndirectedGraph UndirectedGraph::preset(const std::string& name, std::size_t n) {
  if (name == "complete") return complete(n);
  if (name == "ring") return ring(n);
  if (name == "path") return path(n);
  if (name == "star") return star(n);
  throw UsageError(fmt::format("unknown graph preset '{}'", name));
}

void UndirectedGraph::add_edge(std::size_t k, std::size_t j) {
  if (k >= node_count_ || j >= node_count_) {
    throw UsageError(fmt::format("edge ({}, {}) references a node outside 0..{}", k, j,
                                 node_count_ - 1));
  }
  if (k == j) throw UsageError(fmt::format("self-loop ({}, {}) is not an edge", k, j));
  if (edges_.insert({std::min(k, j), std::max(k, j)}).second) {
    adjacency_[k].push_back(j);
    adjacency_[j].push_back(k);
  }
}

bool UndirectedGraph::has_edge(std::size_t k, std::size_t j) const {
  return edges_.count({std::min(k, j), std::max(k, j)}) > 0;
}

bool UndirectedGraph::is_connected() const {
  std::vector<bool> seen(node_count_, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const auto k = frontier.front();
    frontier.pop();
    for (auto j : adjacency_[k]) {
      if (!seen[j]) {
        seen[j] = true;
        ++reached;
        frontier.push(j);
      }
    }
  }
  return reached == node_count_;
}

MixingMatrix build_metropolis_weights(const UndirectedGraph& g) {
  if (!g.is_connected()) {
    throw ValidationError(fmt::format(
        "communication graph on {} nodes is not connected", g.node_count()));
  }
  const auto n = static_cast<Eigen::Index>(g.node_count());
  MixingMatrix w{Eigen::MatrixXd::Zero(n, n)};
  for (const auto& [k, j] : g.edges()) {
    const double weight =
        1.0 / (1.0 + static_cast<double>(std::max(g.degree(k), g.degree(j))));
    w.weights(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = weight;
    w.weights(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = weight;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    double off = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != k) off += w.weights(k, j);
    w.weights(k, k) = 1.0 - off;
  }
  return w;
}

std::vector<Vector> mix(const MixingMatrix& w, const std::vector<Vector>& states) {
  const std::size_t n = w.size();
  if (states.size() != n || static_cast<std::size_t>(w.weights.cols()) != n) {
    throw UsageError(fmt::format("mix: {} states for a {}x{} mixing matrix", states.size(),
                                 w.weights.rows(), w.weights.cols()));
  }
  const auto dim = states.front().size();
  for (const auto& s : states) {
    if (s.size() != dim) throw UsageError("mix: states have different lengths");
  }
  std::vector<Vector> out(n, Vector::Zero(dim));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      const double wjl =
          w.weights(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l));
      if (wjl != 0.0) out[j] += wjl * states[l];
    }
  }
  return out;
}

ValidationReport validate_mixing(const MixingMatrix& w, const UndirectedGraph& g) {
  ValidationReport report;
  const auto& m = w.weights;
  if (m.rows() != m.cols()) {
    report.add("shape", fmt::format("matrix is {}x{}, expected square", m.rows(), m.cols()));
    return report;
  }
  if (static_cast<std::size_t>(m.rows()) != g.node_count()) {
    report.add("shape", fmt::format("matrix has {} rows but the graph has {} nodes",
                                    m.rows(), g.node_count()));
    return report;
  }
  if (!g.is_connected()) report.add("connectivity", "communication graph is not connected");
  const auto n = m.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = m(k, j);
      if (!std::isfinite(v) || v < 0.0) {
        report.add("nonnegativity", fmt::format("w[{}][{}] = {} is negative", k, j, v));
      }
      if (k != j) {
        const bool edge = g.has_edge(static_cast<std::size_t>(k), static_cast<std::size_t>(j));
        if (edge && !(v > 0.0)) {
          report.add("sparsity", fmt::format("edge ({}, {}) carries weight {}", k, j, v));
        } else if (!edge && v != 0.0) {
          report.add("sparsity",
                     fmt::format("non-edge ({}, {}) carries weight {}", k, j, v));
        }
        if (j > k && std::abs(v - m(j, k)) > kStochasticTolerance) {
          report.add("symmetry",
                     fmt::format("w[{}][{}] = {} but w[{}][{}] = {}", k, j, v, j, k, m(j, k)));
        }
      } else if (!(v > 0.0)) {
        report.add("sparsity", fmt::format("self weight w[{}][{}] = {} is not positive", k,
                                           k, v));
      }
    }
    const double row = m.row(k).sum();
    const double col = m.col(k).sum();
    if (std::abs(row - 1.0) > kStochasticTolerance) {
      report.add("row-sum", fmt::format("row {} sums to {}", k, row));
    }
    if (std::abs(col - 1.0) > kStochasticTolerance) {
      report.add("column-sum", fmt::format("column {} sums to {}", k, col));
    }
  }
  return report;
}

}  // namespace clustergame

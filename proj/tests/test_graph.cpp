#include "clustergame/errors.hpp"
#include "clustergame/graph.hpp"
#include "clustergame/rng.hpp"

#include "doctest.h"

#include <vector>

using namespace clustergame;

namespace {

// Random connected graph: a random spanning tree plus extra edges.
UndirectedGraph random_connected(std::size_t n, CounterRng& rng) {
  UndirectedGraph g(n);
  for (std::size_t k = 1; k < n; ++k) g.add_edge(k, rng.below(k));
  const std::size_t extra = rng.below(n * (n - 1) / 2 + 1);
  for (std::size_t e = 0; e < extra; ++e) {
    const std::size_t a = rng.below(n), b = rng.below(n);
    if (a != b) g.add_edge(a, b);
  }
  return g;
}

std::vector<Vector> random_states(std::size_t n, std::size_t dim, CounterRng& rng) {
  std::vector<Vector> s(n, Vector(static_cast<Eigen::Index>(dim)));
  for (auto& v : s)
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = rng.uniform(-10, 10);
  return s;
}

Vector average(const std::vector<Vector>& s) {
  Vector m = Vector::Zero(s.front().size());
  for (const auto& v : s) m += v;
  return m / static_cast<double>(s.size());
}

double spread(const std::vector<Vector>& s) {
  const Vector m = average(s);
  double out = 0.0;
  for (const auto& v : s) out = std::max(out, (v - m).norm());
  return out;
}

}  // namespace

TEST_CASE("graph construction") {
  CHECK_THROWS_AS(UndirectedGraph(0), UsageError);
  UndirectedGraph g(3);
  CHECK_THROWS_AS(g.add_edge(1, 1), UsageError);
  CHECK_THROWS_AS(g.add_edge(0, 3), UsageError);
  g.add_edge(2, 0);
  CHECK(g.has_edge(0, 2));
  CHECK(g.has_edge(2, 0));
  CHECK(g.edges().count({0, 2}) == 1);
  CHECK_FALSE(g.is_connected());
  g.add_edge(1, 2);
  CHECK(g.is_connected());
}

TEST_CASE("presets") {
  CHECK(UndirectedGraph::complete(4).edges().size() == 6);
  CHECK(UndirectedGraph::ring(5).edges().size() == 5);
  CHECK(UndirectedGraph::path(5).edges().size() == 4);
  CHECK(UndirectedGraph::star(5).degree(0) == 4);
  for (const char* name : {"complete", "ring", "path", "star"}) {
    CHECK(UndirectedGraph::is_preset(name));
    for (std::size_t n = 1; n <= 6; ++n) CHECK(UndirectedGraph::preset(name, n).is_connected());
  }
  CHECK_FALSE(UndirectedGraph::is_preset("grid"));
  CHECK_THROWS_AS(UndirectedGraph::preset("grid", 4), UsageError);
}

TEST_CASE("metropolis weights: worked examples") {
  SUBCASE("complete on two nodes") {
    const MixingMatrix w = build_metropolis_weights(UndirectedGraph::complete(2));
    CHECK(w.weights.isApprox(Eigen::MatrixXd::Constant(2, 2, 0.5)));
  }
  SUBCASE("single node") {
    const MixingMatrix w = build_metropolis_weights(UndirectedGraph(1));
    CHECK(w.weights(0, 0) == 1.0);
  }
  SUBCASE("path on three nodes") {
    const MixingMatrix w = build_metropolis_weights(UndirectedGraph::path(3));
    Eigen::MatrixXd expected(3, 3);
    expected << 2.0 / 3, 1.0 / 3, 0, 1.0 / 3, 1.0 / 3, 1.0 / 3, 0, 1.0 / 3, 2.0 / 3;
    CHECK((w.weights - expected).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("complete on four nodes averages exactly") {
    const MixingMatrix w = build_metropolis_weights(UndirectedGraph::complete(4));
    CHECK((w.weights.array() - 0.25).abs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("disconnected graphs get no mixing matrix") {
  UndirectedGraph g(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(build_metropolis_weights(g), ValidationError);
}

TEST_CASE("metropolis matrices of random connected graphs pass validation") {
  CounterRng rng(21, StreamTag::kTest, {1});
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(20);
    const UndirectedGraph g = random_connected(n, rng);
    const MixingMatrix w = build_metropolis_weights(g);
    const ValidationReport r = validate_mixing(w, g);
    CHECK_MESSAGE(r.ok(), r.to_string());
    // Independent restatement of the invariants.
    const auto& m = w.weights;
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
      CHECK(std::abs(m.row(k).sum() - 1.0) <= 1e-12);
      CHECK(std::abs(m.col(k).sum() - 1.0) <= 1e-12);
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const bool linked = k == j || g.has_edge(static_cast<std::size_t>(k),
                                                 static_cast<std::size_t>(j));
        CHECK((m(k, j) > 0.0) == linked);
        CHECK(m(k, j) >= 0.0);
      }
    }
  }
}

TEST_CASE("validate_mixing reports each violated invariant") {
  const UndirectedGraph g = UndirectedGraph::path(3);
  const MixingMatrix good = build_metropolis_weights(g);
  CHECK(validate_mixing(good, g).ok());

  SUBCASE("row summing to 0.9") {
    MixingMatrix w = good;
    w.weights(0, 0) -= 0.1;
    const auto r = validate_mixing(w, g);
    CHECK(r.has("row-sum"));
    CHECK(r.has("column-sum"));
  }
  SUBCASE("positive entry on a non-edge") {
    MixingMatrix w = good;
    w.weights(0, 2) = w.weights(2, 0) = 0.1;
    w.weights(0, 0) -= 0.1;
    w.weights(2, 2) -= 0.1;
    const auto r = validate_mixing(w, g);
    CHECK(r.has("sparsity"));
    CHECK_FALSE(r.has("row-sum"));
  }
  SUBCASE("asymmetric") {
    MixingMatrix w = good;
    w.weights(0, 1) += 0.05;
    w.weights(0, 0) -= 0.05;
    CHECK(validate_mixing(w, g).has("symmetry"));
  }
  SUBCASE("negative entry") {
    MixingMatrix w = good;
    w.weights(1, 1) = -0.1;
    CHECK(validate_mixing(w, g).has("nonnegativity"));
  }
  SUBCASE("wrong shape") {
    MixingMatrix w{Eigen::MatrixXd::Identity(2, 2)};
    CHECK(validate_mixing(w, g).has("shape"));
  }
}

TEST_CASE("mix") {
  CounterRng rng(22, StreamTag::kTest, {1});
  const MixingMatrix w = build_metropolis_weights(UndirectedGraph::ring(5));

  SUBCASE("identical states are a fixed point") {
    const Vector s = Vector::LinSpaced(5, 0, 4);
    for (const auto& out : mix(w, std::vector<Vector>(5, s))) CHECK((out - s).norm() < 1e-14);
  }
  SUBCASE("identity leaves states unchanged") {
    const auto states = random_states(5, 5, rng);
    CHECK(mix(MixingMatrix{Eigen::MatrixXd::Identity(5, 5)}, states) == states);
  }
  SUBCASE("average is conserved") {
    for (int trial = 0; trial < 50; ++trial) {
      const auto states = random_states(5, 5, rng);
      CHECK((average(mix(w, states)) - average(states)).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
  SUBCASE("dimension mismatch") {
    auto states = random_states(5, 5, rng);
    CHECK_THROWS_AS(mix(w, std::vector<Vector>(states.begin(), states.begin() + 4)), UsageError);
    states[2] = Vector::Zero(3);
    CHECK_THROWS_AS(mix(w, states), UsageError);
  }
}

TEST_CASE("repeated mixing reaches consensus geometrically") {
  CounterRng rng(23, StreamTag::kTest, {1});
  for (const char* name : {"complete", "ring", "path", "star"}) {
    const MixingMatrix w = build_metropolis_weights(UndirectedGraph::preset(name, 4));
    auto states = random_states(4, 4, rng);
    const double initial = spread(states);
    for (int t = 0; t < 200; ++t) states = mix(w, states);
    CHECK_MESSAGE(spread(states) <= 1e-8 * initial, name);
  }
}

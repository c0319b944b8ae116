#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "clustergame/game.hpp"

namespace clustergame {

struct VISolution {
  JointAction point;
  double residual = 0.0;  // ||x - proj(x - F(x))||
  std::uint64_t iterations = 0;
  bool converged = false;
  double step = 0.0;  // final extragradient step tau
  std::vector<double> residual_history;
  std::uint64_t last_backtrack = 0;  // iteration of the last step-size halving
};

struct SolverOptions {
  double tol = 1e-8;
  std::uint64_t max_iter = 1'000'000;
  std::optional<JointAction> start;  // default: box midpoint
  std::uint64_t seed = 0;            // Lipschitz sampling
  std::size_t lipschitz_samples = 100;
};

// Natural residual of VI(Omega, F) at x.
double natural_residual(const GameSpec& spec, const JointAction& x);

// Largest ||F(u) - F(v)|| / ||u - v|| over random feasible pairs.
double estimate_lipschitz(const GameSpec& spec, std::size_t samples, std::uint64_t seed);

// Extragradient with backtracking:
//   y = P(x - tau F(x)),  x+ = P(x - tau F(y)),
// halving tau whenever tau ||F(x) - F(y)|| > 0.9 ||x - y||. Stops at
// natural residual <= tol. Throws NumericError on a non-finite mapping value.
VISolution solve_vi(const GameSpec& spec, const SolverOptions& options = {});

enum class BoundStatus { kInterior, kAtLower, kAtUpper };

struct KktReport {
  double max_violation = 0.0;
  std::size_t worst_component = 0;
  std::vector<double> violations;  // per component, >= 0
  std::vector<BoundStatus> status;
  double tol = 0.0;

  bool ok() const { return max_violation <= tol; }
};

// First-order conditions on the box, per component of F(x): zero in the
// interior, >= 0 at a lower bound, <= 0 at an upper bound.
KktReport verify_ne_kkt(const GameSpec& spec, const JointAction& x, double tol);

// How much cluster i could still gain by deviating from x_i while the other
// clusters stay at x_{-i}: max(0, J_i(x) - min over candidates). Candidates
// are a grid^{n_i} lattice of the box (grid clamped to [1, 15]), uniformly
// random points, and a compass-search polish of the best one.
double best_response_check(const GameSpec& spec, const JointAction& x, std::size_t i,
                           std::size_t grid, std::size_t random_samples = 10'000,
                           std::uint64_t seed = 0);

}  // namespace clustergame

#pragma once

#include <cstddef>
#include <cstdint>

#include "clustergame/estimator.hpp"
#include "clustergame/game.hpp"

namespace clustergame {

struct ErrorMoments {
  double mean_error_norm = 0.0;     // E ||d - grad||
  double mean_sq_error_norm = 0.0;  // E ||d - grad||^2
  double bias_norm = 0.0;           // ||E d - grad||
  std::size_t samples = 0;
};

// Monte-Carlo moments of the estimation error e = d - grad_i J_i^j(x) for
// agent (i, j). Only the cluster-i block is perturbed; the other clusters
// stay at x.
ErrorMoments estimator_error_moments(const GameSpec& spec, std::size_t i, std::size_t j,
                                     const JointAction& x, double sigma, std::size_t samples,
                                     CounterRng& rng);

}  // namespace clustergame

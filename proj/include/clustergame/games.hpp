#pragma once

#include <optional>
#include <vector>

#include "clustergame/game.hpp"

namespace clustergame {

// Factory j of company i: production cost a x^2 + b x + c on [lower, upper].
struct CournotAgent {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double lower = 0.0;
  double upper = 1.0;

  bool operator==(const CournotAgent&) const = default;
};

struct CournotParams {
  std::vector<std::vector<CournotAgent>> clusters;
  double price_constant = 0.0;  // P(x) = P_c - sum of all productions

  bool operator==(const CournotParams&) const = default;
};

// Two companies with four factories each.
CournotParams table1_cournot_params();

double cournot_price(const CournotParams& params, const JointAction& x);

// Local cost of factory j in company i: C_i^j(x_i^j) - x_i^j P(x).
// Throws UsageError when a <= 0 or P_c does not dominate the total capacity.
GameSpec make_cournot(const CournotParams& params,
                      const std::vector<std::optional<SafetyBall>>& balls = {});

// Every agent of cluster i pays ||x_i - target_i||^2 / 2; no coupling, so the
// equilibrium is the projection of the targets onto the boxes.
struct QuadraticParams {
  std::vector<std::vector<ActionInterval>> intervals;
  std::vector<Vector> targets;
};

GameSpec make_quadratic_separable(const QuadraticParams& params,
                                  const std::vector<std::optional<SafetyBall>>& balls = {});

// All local costs are identically zero.
GameSpec make_zero_game(std::vector<ClusterSpec> clusters);

}  // namespace clustergame

#include "clustergame/solver.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "clustergame/errors.hpp"
#include "clustergame/rng.hpp"

namespace clustergame {

namespace {

Vector checked_mapping(const GameSpec& spec, const JointAction& x) {
  Vector f = game_mapping(spec, x);
  if (!f.allFinite()) throw NumericError("game mapping returned a non-finite value");
  return f;
}

JointAction random_point(const GameSpec& spec, CounterRng& rng) {
  const JointAction lo = spec.lower();
  const JointAction hi = spec.upper();
  JointAction x(lo.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = rng.uniform(lo[k], hi[k]);
  return x;
}

}  // namespace

double natural_residual(const GameSpec& spec, const JointAction& x) {
  return (x - project_joint(spec, x - checked_mapping(spec, x))).norm();
}

double estimate_lipschitz(const GameSpec& spec, std::size_t samples, std::uint64_t seed) {
  CounterRng rng(seed, StreamTag::kSolver, {0});
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const JointAction u = random_point(spec, rng);
    const JointAction v = random_point(spec, rng);
    const double gap = (u - v).norm();
    if (gap <= 0.0) continue;
    best = std::max(best, (checked_mapping(spec, u) - checked_mapping(spec, v)).norm() / gap);
  }
  return best;
}

VISolution solve_vi(const GameSpec& spec, const SolverOptions& options) {
  constexpr double kContraction = 0.9;
  VISolution sol;
  JointAction x = project_joint(spec, options.start ? *options.start : spec.midpoint());
  const double lipschitz = estimate_lipschitz(spec, options.lipschitz_samples, options.seed);
  double tau = lipschitz > 0.0 ? 1.0 / lipschitz : 1.0;

  for (std::uint64_t it = 0;; ++it) {
    const Vector fx = checked_mapping(spec, x);
    const double residual = (x - project_joint(spec, x - fx)).norm();
    sol.residual_history.push_back(residual);
    if (residual <= options.tol) {
      sol.converged = true;
      sol.iterations = it;
      sol.residual = residual;
      break;
    }
    if (it >= options.max_iter) {
      sol.iterations = it;
      sol.residual = residual;
      break;
    }
    JointAction y;
    Vector fy;
    for (;;) {
      y = project_joint(spec, x - tau * fx);
      fy = checked_mapping(spec, y);
      const double move = (x - y).norm();
      if (tau * (fx - fy).norm() <= kContraction * move || move == 0.0) break;
      tau *= 0.5;
      sol.last_backtrack = it;
      if (tau < 1e-300) throw NumericError("extragradient step collapsed to zero");
    }
    x = project_joint(spec, x - tau * fy);
  }
  sol.point = x;
  sol.step = tau;
  return sol;
}

KktReport verify_ne_kkt(const GameSpec& spec, const JointAction& x, double tol) {
  spec.require_feasible(x);
  const Vector f = checked_mapping(spec, x);
  const JointAction lo = spec.lower();
  const JointAction hi = spec.upper();
  KktReport rep;
  rep.tol = tol;
  const auto n = static_cast<std::size_t>(x.size());
  rep.violations.resize(n);
  rep.status.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto idx = static_cast<Eigen::Index>(k);
    const double active = 1e-9 * std::max(1.0, hi[idx] - lo[idx]);
    double v;
    if (x[idx] - lo[idx] <= active) {
      rep.status[k] = BoundStatus::kAtLower;
      v = std::max(0.0, -f[idx]);
    } else if (hi[idx] - x[idx] <= active) {
      rep.status[k] = BoundStatus::kAtUpper;
      v = std::max(0.0, f[idx]);
    } else {
      rep.status[k] = BoundStatus::kInterior;
      v = std::abs(f[idx]);
    }
    rep.violations[k] = v;
    if (v > rep.max_violation) {
      rep.max_violation = v;
      rep.worst_component = k;
    }
  }
  return rep;
}

double best_response_check(const GameSpec& spec, const JointAction& x, std::size_t i,
                           std::size_t grid, std::size_t random_samples, std::uint64_t seed) {
  const auto& cluster = spec.cluster(i);
  const std::size_t n = cluster.agent_count();
  grid = std::clamp<std::size_t>(grid, 1, 15);
  const double current = eval_cluster_cost(spec, i, x);

  JointAction probe = x;
  auto cost_at = [&](const Vector& xi) {
    spec.set_block(probe, i, xi);
    return eval_cluster_cost(spec, i, probe);
  };

  Vector best_point = spec.block(x, i);
  double best = current;
  auto consider = [&](const Vector& xi) {
    const double c = cost_at(xi);
    if (c < best) {
      best = c;
      best_point = xi;
    }
  };

  // Lattice: odometer over grid^n points.
  std::vector<std::size_t> digit(n, 0);
  Vector xi(static_cast<Eigen::Index>(n));
  for (;;) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& iv = cluster.interval(k);
      xi[static_cast<Eigen::Index>(k)] =
          grid == 1 ? iv.midpoint()
                    : iv.lower + iv.width() * static_cast<double>(digit[k]) /
                                     static_cast<double>(grid - 1);
    }
    consider(xi);
    std::size_t k = 0;
    while (k < n && ++digit[k] == grid) digit[k++] = 0;
    if (k == n) break;
  }

  CounterRng rng(seed, StreamTag::kSolver, {1, i});
  for (std::size_t s = 0; s < random_samples; ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& iv = cluster.interval(k);
      xi[static_cast<Eigen::Index>(k)] = rng.uniform(iv.lower, iv.upper);
    }
    consider(xi);
  }

  // Compass search from the best candidate, shrinking the pattern on failure.
  double step = 0.0;
  for (const auto& iv : cluster.intervals())
    step = std::max(step, iv.width() / static_cast<double>(std::max<std::size_t>(grid, 2)));
  const double min_step = 1e-10 * step;
  while (step > min_step) {
    bool improved = false;
    for (std::size_t k = 0; k < n; ++k) {
      for (const double dir : {1.0, -1.0}) {
        Vector trial = best_point;
        trial[static_cast<Eigen::Index>(k)] += dir * step;
        trial = project_cluster(cluster, trial);
        const double c = cost_at(trial);
        if (c < best) {
          best = c;
          best_point = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return std::max(0.0, current - best);
}

}  // namespace clustergame
